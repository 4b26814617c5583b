"""Exact temporal Menger oracles and the labeling falsifier.

For a labeled multigraph and distinct vertices s, t:

* p(s, t): maximum number of internally vertex-disjoint temporal s,t-paths;
* c(s, t): minimum number of vertices (excluding s, t) whose removal leaves
  no temporal s,t-path, defined only when s and t are non-adjacent;
* the edge-disjoint analogues, which always coincide; both certificates
  come out of one time-expanded max-flow computation.

`falsify_mengerian` searches time-functions for a pair with p < c, either
exhaustively over all label weak orders or by seeded random sampling.
Only the relative order of labels matters, so exhaustive enumeration
ranges over dense rank assignments: ordered set partitions of the edge
set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import NamedTuple

from .multigraph import GraphError, Multigraph
from .temporal import TemporalGraph, TemporalPath, earliest_arrival, validate_walk, walk_to_path

DEFAULT_MAX_VERTICES = 15
DEFAULT_MAX_EDGES_EXHAUSTIVE = 7


class ResourceLimitError(RuntimeError):
    """An exact search was refused because the instance exceeds its guard."""


class CutUndefinedError(ValueError):
    """Vertex cuts are undefined for adjacent endpoints."""


def _check_pair(tg: TemporalGraph, s: int, t: int) -> None:
    if not tg.graph.has_vertex(s) or not tg.graph.has_vertex(t):
        raise GraphError(f"unknown vertex in pair ({s}, {t})")
    if s == t:
        raise GraphError("source and target must differ")


def _check_size(tg: TemporalGraph, max_size: int) -> None:
    n = len(tg.graph.vertices)
    if n > max_size:
        raise ResourceLimitError(
            f"graph has {n} vertices, exact search is limited to {max_size}; "
            "raise max_size explicitly to override"
        )


# ----------------------------------------------------------------------
# temporal path enumeration (shared by the vertex-disjoint oracles)


def _route_paths(tg: TemporalGraph, s: int, t: int, cap: int | None = None) -> list[TemporalPath]:
    """All temporal s,t-paths, one per realizable vertex sequence.

    Per hop the smallest feasible label is taken (smallest edge id on
    ties); greedy minimal arrivals realize every realizable sequence, so
    nothing is missed.  Paths come out in depth-first order with
    neighbors visited by ascending vertex id.
    """
    g = tg.graph
    out: list[TemporalPath] = []
    vpath = [s]
    epath: list[int] = []

    def dfs(cur: int, arrived: int) -> None:
        if cap is not None and len(out) > cap:
            return
        if cur == t:
            out.append(TemporalPath(tuple(vpath), tuple(epath)))
            return
        for y in g.neighbors(cur):
            if y in vpath:
                continue
            best = None
            for eid in g.parallel_edges(cur, y):
                lab = tg.label(eid)
                if lab >= arrived and (best is None or lab < tg.label(best)):
                    best = eid
            if best is None:
                continue
            vpath.append(y)
            epath.append(best)
            dfs(y, tg.label(best))
            vpath.pop()
            epath.pop()

    dfs(s, 0)
    if cap is not None and len(out) > cap:
        raise ResourceLimitError(f"more than {cap} temporal paths between {s} and {t}")
    return out


def _max_packing(
    paths: list[TemporalPath], stop_at: int | None = None
) -> list[TemporalPath]:
    """Largest internally-disjoint subset, deterministic first optimum."""
    best: list[TemporalPath] = []
    chosen: list[TemporalPath] = []

    def search(idx: int, used: frozenset[int]) -> bool:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
            if stop_at is not None and len(best) >= stop_at:
                return True
        if idx >= len(paths) or len(chosen) + (len(paths) - idx) <= len(best):
            return False
        for i in range(idx, len(paths)):
            p = paths[i]
            if used & p.internal:
                continue
            chosen.append(p)
            if search(i + 1, used | p.internal):
                return True
            chosen.pop()
        return False

    search(0, frozenset())
    return best


def max_disjoint_paths(
    tg: TemporalGraph, s: int, t: int, max_size: int = DEFAULT_MAX_VERTICES
) -> tuple[TemporalPath, ...]:
    """A maximum set of internally vertex-disjoint temporal s,t-paths."""
    _check_pair(tg, s, t)
    _check_size(tg, max_size)
    return tuple(_max_packing(_route_paths(tg, s, t)))


def min_vertex_cut(
    tg: TemporalGraph, s: int, t: int, max_size: int = DEFAULT_MAX_VERTICES
) -> frozenset[int]:
    """A minimum temporal s,t-cut; smallest size, then lexicographically first.

    Undefined (raises CutUndefinedError) when s and t are adjacent: no
    vertex set can separate endpoints that share an edge.
    """
    _check_pair(tg, s, t)
    if tg.graph.adjacent(s, t):
        raise CutUndefinedError(f"vertices {s} and {t} are adjacent")
    _check_size(tg, max_size)
    if t not in earliest_arrival(tg, s):
        return frozenset()
    others = sorted(tg.graph.vertices - {s, t})
    for size in range(1, len(others) + 1):
        for subset in combinations(others, size):
            if t not in earliest_arrival(tg, s, banned_vertices=subset):
                return frozenset(subset)
    raise AssertionError("removing every internal vertex must separate a non-adjacent pair")


class MengerGap(NamedTuple):
    paths: int
    cut: int
    gap: int


def menger_gap(
    tg: TemporalGraph, s: int, t: int, max_size: int = DEFAULT_MAX_VERTICES
) -> MengerGap:
    """p, c and their difference for a non-adjacent pair."""
    p = len(max_disjoint_paths(tg, s, t, max_size=max_size))
    c = len(min_vertex_cut(tg, s, t, max_size=max_size))
    return MengerGap(p, c, c - p)


# ----------------------------------------------------------------------
# edge-disjoint paths and cuts via time-expanded max flow


class _Dinic:
    def __init__(self) -> None:
        self.adj: list[list[list[int]]] = []

    def node(self) -> int:
        self.adj.append([])
        return len(self.adj) - 1

    def arc(self, a: int, b: int, cap: int) -> tuple[int, int]:
        self.adj[a].append([b, cap, len(self.adj[b]), cap])
        self.adj[b].append([a, 0, len(self.adj[a]) - 1, 0])
        return a, len(self.adj[a]) - 1

    def flow_on(self, ref: tuple[int, int]) -> int:
        a, i = ref
        arc = self.adj[a][i]
        return arc[3] - arc[1]

    def maxflow(self, s: int, t: int) -> int:
        total = 0
        n = len(self.adj)
        while True:
            level = [-1] * n
            level[s] = 0
            queue = [s]
            for x in queue:
                for arc in self.adj[x]:
                    if arc[1] > 0 and level[arc[0]] < 0:
                        level[arc[0]] = level[x] + 1
                        queue.append(arc[0])
            if level[t] < 0:
                return total
            it = [0] * n

            def push(x: int, limit: int) -> int:
                if x == t:
                    return limit
                while it[x] < len(self.adj[x]):
                    arc = self.adj[x][it[x]]
                    if arc[1] > 0 and level[arc[0]] == level[x] + 1:
                        got = push(arc[0], min(limit, arc[1]))
                        if got:
                            arc[1] -= got
                            self.adj[arc[0]][arc[2]][1] += got
                            return got
                    it[x] += 1
                return 0

            while True:
                got = push(s, len(self.adj))
                if not got:
                    break
                total += got


def edge_menger(
    tg: TemporalGraph, s: int, t: int
) -> tuple[tuple[TemporalPath, ...], frozenset[int]]:
    """Maximum edge-disjoint temporal s,t-paths and a matching minimum edge cut.

    Both certificates have the same size: the time-expanded network gives
    an integral max flow whose only finite capacities sit on per-edge
    gadgets, so its min cut is a set of edges of the original graph.
    """
    _check_pair(tg, s, t)
    g = tg.graph

    labels_of: dict[int, list[int]] = {}
    for e in g.edges:
        lab = tg.label(e.id)
        for v in e.pair:
            labels_of.setdefault(v, [])
            if lab not in labels_of[v]:
                labels_of[v].append(lab)
    for v in labels_of:
        labels_of[v].sort()

    if s not in labels_of or t not in labels_of:
        return (), frozenset()

    net = _Dinic()
    src = net.node()
    snk = net.node()
    inf = len(g.edges) + 1
    vnode: dict[tuple[int, int], int] = {}
    for v, labs in sorted(labels_of.items()):
        for lab in labs:
            vnode[(v, lab)] = net.node()
        for a, b in zip(labs, labs[1:]):
            net.arc(vnode[(v, a)], vnode[(v, b)], inf)
    gadget: dict[int, tuple[int, int, tuple[int, int]]] = {}
    for e in g.edges:
        lab = tg.label(e.id)
        node_in = net.node()
        node_out = net.node()
        ref = net.arc(node_in, node_out, 1)
        net.arc(vnode[(e.u, lab)], node_in, inf)
        net.arc(vnode[(e.v, lab)], node_in, inf)
        net.arc(node_out, vnode[(e.u, lab)], inf)
        net.arc(node_out, vnode[(e.v, lab)], inf)
        gadget[e.id] = (node_in, node_out, ref)

    net.arc(src, vnode[(s, labels_of[s][0])], inf)
    for lab in labels_of[t]:
        net.arc(vnode[(t, lab)], snk, inf)

    value = net.maxflow(src, snk)

    # min cut first: decomposition below consumes the recorded flow, so the
    # residual frontier must be read before it is disturbed
    seen = {src}
    stack = [src]
    while stack:
        x = stack.pop()
        for arc in net.adj[x]:
            if arc[1] > 0 and arc[0] not in seen:
                seen.add(arc[0])
                stack.append(arc[0])
    cut = frozenset(
        eid for eid, (node_in, node_out, _) in gadget.items()
        if node_in in seen and node_out not in seen
    )

    # walk decomposition with in-place cancellation of incidental cycles
    node_owner: dict[int, tuple[int, int]] = {}
    for eid, (node_in, node_out, _) in gadget.items():
        node_owner[node_in] = (eid, 0)
        node_owner[node_out] = (eid, 1)
    vertex_at = {idx: v for (v, _), idx in vnode.items()}

    paths = []
    for _ in range(value):
        node_path = [src]
        while node_path[-1] != snk:
            x = node_path[-1]
            nxt = None
            for arc in net.adj[x]:
                if arc[3] > 0 and arc[3] - arc[1] > 0:
                    arc[1] += 1
                    nxt = arc[0]
                    break
            assert nxt is not None, "flow conservation"
            if nxt in node_path:
                node_path = node_path[: node_path.index(nxt) + 1]
            else:
                node_path.append(nxt)
        seq = [s]
        cur = s
        for a, b in zip(node_path, node_path[1:]):
            if a in node_owner and b in node_owner and node_owner[a][0] == node_owner[b][0]:
                eid = node_owner[a][0]
                cur = g.edge(eid).other(cur)
                seq += [eid, cur]
        paths.append(walk_to_path(tg, validate_walk(tg, seq)))

    assert len(cut) == value, "max flow must equal the gadget cut"
    assert t not in earliest_arrival(tg, s, banned_edges=cut)
    used = [e for p in paths for e in p.edge_ids]
    assert len(used) == len(set(used)), "paths must be edge-disjoint"
    return tuple(paths), cut


# ----------------------------------------------------------------------
# falsification


@dataclass(frozen=True)
class Counterexample:
    """A time-function and a pair witnessing p < c, with certificates."""

    labeled: TemporalGraph
    s: int
    t: int
    paths: tuple[TemporalPath, ...]
    cut: frozenset[int]

    @property
    def gap(self) -> int:
        return len(self.cut) - len(self.paths)


def _rank_assignments(m: int):
    """All dense label sequences on m edges, each weak order exactly once.

    Restricted-growth strings enumerate the set partitions; permuting the
    blocks then assigns their ranks.  Plain growth strings alone would
    conflate orders like (1,2) and (2,1).
    """
    if m == 0:
        yield []
        return
    rgs = [0] * m

    def rec(i: int, top: int):
        if i == m:
            for perm in permutations(range(top + 1)):
                yield [perm[a] + 1 for a in rgs]
            return
        for val in range(top + 2):
            rgs[i] = val
            yield from rec(i + 1, max(top, val))

    yield from rec(1, 0)


class _PairRoutes:
    """Static simple routes of one ordered pair, ready for fast label scans."""

    __slots__ = ("vseqs", "internals", "hop_groups")

    def __init__(self, routes: list[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]]):
        self.vseqs = [vs for vs, _ in routes]
        self.internals = [frozenset(vs[1:-1]) for vs, _ in routes]
        self.hop_groups = [hops for _, hops in routes]

    def reversed_copy(self) -> "_PairRoutes":
        return _PairRoutes(
            [
                (tuple(reversed(vs)), tuple(reversed(hops)))
                for vs, hops in zip(self.vseqs, self.hop_groups)
            ]
        )


def _simple_routes(g: Multigraph, s: int, t: int, cap: int):
    """All simple s,t vertex sequences with their per-hop parallel edge ids."""
    out: list[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]] = []
    vpath = [s]

    def dfs(cur: int):
        if len(out) > cap:
            return
        if cur == t:
            hops = tuple(
                g.parallel_edges(a, b) for a, b in zip(vpath, vpath[1:])
            )
            out.append((tuple(vpath), hops))
            return
        for y in g.neighbors(cur):
            if y in vpath:
                continue
            vpath.append(y)
            dfs(y)
            vpath.pop()

    dfs(s)
    if len(out) > cap:
        raise ResourceLimitError(
            f"more than {cap} simple routes between {s} and {t}; "
            "the graph is too dense to falsify this way"
        )
    return out


def _route_alive(hop_groups, label_of) -> bool:
    cur = 0
    for hop in hop_groups:
        best = None
        for eid in hop:
            lab = label_of[eid]
            if lab >= cur and (best is None or lab < best):
                best = lab
        if best is None:
            return False
        cur = best
    return True


def _min_hitting(sets: list[frozenset[int]]) -> int:
    """Minimum number of vertices meeting every set; exact branch and bound."""
    best = len(sets)

    def rec(idx: int, chosen: frozenset[int], k: int):
        nonlocal best
        if k >= best:
            return
        for i in range(idx, len(sets)):
            if not sets[i] & chosen:
                for v in sorted(sets[i]):
                    rec(i + 1, chosen | {v}, k + 1)
                return
        best = k

    rec(0, frozenset(), 0)
    return best


def _max_disjoint_count(internals: list[frozenset[int]]) -> int:
    best = 0

    def rec(idx: int, used: frozenset[int], k: int):
        nonlocal best
        if k > best:
            best = k
        if k + (len(internals) - idx) <= best:
            return
        for i in range(idx, len(internals)):
            if not internals[i] & used:
                rec(i + 1, used | internals[i], k + 1)

    rec(0, frozenset(), 0)
    return best


def falsify_mengerian(
    g: Multigraph,
    samples: int | None = None,
    seed: int = 0,
    max_edges: int = DEFAULT_MAX_EDGES_EXHAUSTIVE,
    route_cap: int = 5000,
) -> Counterexample | None:
    """Search time-functions for a non-adjacent ordered pair with p < c.

    samples=None enumerates every weak order of labels (requires
    len(edges) <= max_edges); an integer draws that many seeded uniform
    assignments with labels in 1..len(edges).  Returns the first
    counterexample in enumeration order, None when the search finds none.
    """
    m = len(g.edges)
    edge_ids = [e.id for e in g.edges]
    if samples is None and m > max_edges:
        raise ResourceLimitError(
            f"exhaustive falsification over {m} edges exceeds the bound {max_edges}"
        )

    pairs = []
    vs = sorted(g.vertices)
    for s in vs:
        for t in vs:
            if s != t and not g.adjacent(s, t):
                pairs.append((s, t))
    if not pairs or m == 0:
        return None

    routes: dict[tuple[int, int], _PairRoutes] = {}
    for s, t in pairs:
        if (t, s) in routes:
            routes[(s, t)] = routes[(t, s)].reversed_copy()
        else:
            routes[(s, t)] = _PairRoutes(_simple_routes(g, s, t, route_cap))

    def check(label_list: list[int]) -> Counterexample | None:
        label_of = dict(zip(edge_ids, label_list))
        for s, t in pairs:
            pr = routes[(s, t)]
            alive = [
                pr.internals[i]
                for i in range(len(pr.internals))
                if _route_alive(pr.hop_groups[i], label_of)
            ]
            if not alive:
                continue
            c = _min_hitting(alive)
            if c <= 1:
                continue  # one path exists, so p >= 1 = c or p = c = 1
            p = _max_disjoint_count(alive)
            if p < c:
                tg = TemporalGraph.make(g, label_of)
                size = max(len(g.vertices), DEFAULT_MAX_VERTICES)
                path_cert = max_disjoint_paths(tg, s, t, max_size=size)
                cut_cert = min_vertex_cut(tg, s, t, max_size=size)
                assert len(path_cert) == p and len(cut_cert) == c, (
                    "route engine disagrees with the exact oracles"
                )
                return Counterexample(tg, s, t, path_cert, cut_cert)
        return None

    if samples is None:
        for labels in _rank_assignments(m):
            hit = check(labels)
            if hit is not None:
                return hit
        return None

    rng = random.Random(seed)
    for _ in range(samples):
        labels = [rng.randint(1, m) for _ in range(m)]
        hit = check(labels)
        if hit is not None:
            return hit
    return None
