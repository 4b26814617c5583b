"""Undirected multigraphs with stable integer ids.

Vertices are non-negative ints, edges carry an id and an unordered pair of
distinct endpoints (self-loops are rejected).  All values are immutable;
every operation returns a new graph.  Edge ids survive transformations
that keep the edge, which lets embeddings and labelings refer to edges of
the original graph no matter how many derived graphs sit in between.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-domain arguments."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True, order=True)
class Edge:
    id: int
    u: int
    v: int

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise GraphError(f"edge {self.id}: self-loop at vertex {self.u}")
        if self.u > self.v:
            # normalized so that equal pairs compare equal
            lo, hi = self.v, self.u
            object.__setattr__(self, "u", lo)
            object.__setattr__(self, "v", hi)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise GraphError(f"vertex {x} is not an endpoint of edge {self.id}")


@dataclass(frozen=True)
class Multigraph:
    vertices: frozenset[int] = field(default_factory=frozenset)
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))
        seen: set[int] = set()
        for e in self.edges:
            if e.id in seen:
                raise GraphError(f"duplicate edge id {e.id}")
            seen.add(e.id)
            if e.u not in self.vertices or e.v not in self.vertices:
                raise GraphError(f"edge {e.id}: endpoint not a declared vertex")
        for v in self.vertices:
            if not isinstance(v, int) or v < 0:
                raise GraphError(f"vertex ids must be non-negative ints, got {v!r}")

    # ------------------------------------------------------------------
    # construction helpers

    @staticmethod
    def build(vertices: Iterable[int] | int, pairs: Iterable[tuple[int, int]] = ()) -> "Multigraph":
        """Build from a vertex set (or a count n meaning 0..n-1) and endpoint pairs.

        Edge ids are assigned densely in the order the pairs are given.
        """
        if isinstance(vertices, int):
            vs = frozenset(range(vertices))
        else:
            vs = frozenset(vertices)
        es = tuple(Edge(i, u, v) for i, (u, v) in enumerate(pairs))
        return Multigraph(vs, es)

    # ------------------------------------------------------------------
    # cached structure

    @cached_property
    def _by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _mult(self) -> dict[tuple[int, int], int]:
        m: dict[tuple[int, int], int] = {}
        for e in self.edges:
            m[e.pair] = m.get(e.pair, 0) + 1
        return m

    @cached_property
    def _adj(self) -> dict[int, tuple[int, ...]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            nbrs[e.u].add(e.v)
            nbrs[e.v].add(e.u)
        return {v: tuple(sorted(s)) for v, s in nbrs.items()}

    @cached_property
    def _incident(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.u].append(e.id)
            inc[e.v].append(e.id)
        return {v: tuple(ids) for v, ids in inc.items()}

    @cached_property
    def _parallel(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Edge ids of each adjacent pair, ascending."""
        groups: dict[tuple[int, int], list[int]] = {}
        for e in self.edges:
            groups.setdefault(e.pair, []).append(e.id)
        return {p: tuple(ids) for p, ids in groups.items()}

    # ------------------------------------------------------------------
    # queries

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise GraphError(f"no edge with id {edge_id}") from None

    def has_vertex(self, v: int) -> bool:
        return v in self.vertices

    def multiplicity(self, u: int, v: int) -> int:
        """Number of parallel edges between u and v (0 when non-adjacent)."""
        if u not in self.vertices or v not in self.vertices:
            raise GraphError(f"unknown vertex in pair ({u}, {v})")
        if u == v:
            raise GraphError("multiplicity is undefined for a single vertex")
        return self._mult.get(_norm(u, v), 0)

    def adjacent(self, u: int, v: int) -> bool:
        return self.multiplicity(u, v) > 0

    def parallel_edges(self, u: int, v: int) -> tuple[int, ...]:
        """Ids of the u-v parallel class, ascending (empty when non-adjacent)."""
        if u not in self.vertices or v not in self.vertices:
            raise GraphError(f"unknown vertex in pair ({u}, {v})")
        return self._parallel.get(_norm(u, v), ())

    def neighbors(self, v: int) -> tuple[int, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def incident_edges(self, v: int) -> tuple[int, ...]:
        try:
            return self._incident[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def simple_degree(self, v: int) -> int:
        """Number of distinct neighbors."""
        return len(self.neighbors(v))

    def edge_degree(self, v: int) -> int:
        """Number of incident edges, parallels counted separately."""
        return len(self.incident_edges(v))

    def adjacent_pairs(self) -> tuple[tuple[int, int], ...]:
        """All adjacent unordered pairs, sorted."""
        return tuple(sorted(self._mult))

    def has_parallel_edges(self) -> bool:
        return any(m >= 2 for m in self._mult.values())

    def max_simple_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    # ------------------------------------------------------------------
    # derived graphs

    def underlying_simple(self) -> "Multigraph":
        """Keep one edge per adjacent pair: the one with the smallest id."""
        keep = [self._by_id[ids[0]] for ids in self._parallel.values()]
        return Multigraph(self.vertices, tuple(keep))

    def remove_vertices(self, drop: Iterable[int]) -> "Multigraph":
        ds = set(drop)
        unknown = ds - self.vertices
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)}")
        keep_edges = tuple(e for e in self.edges if e.u not in ds and e.v not in ds)
        return Multigraph(self.vertices - ds, keep_edges)

    def remove_edges(self, drop: Iterable[int]) -> "Multigraph":
        ds = set(drop)
        for i in ds:
            self.edge(i)
        return Multigraph(self.vertices, tuple(e for e in self.edges if e.id not in ds))

    def subgraph_from_edges(self, edge_ids: Iterable[int]) -> "Multigraph":
        """Subgraph on exactly the given edges; vertices are their endpoints."""
        es = tuple(self.edge(i) for i in sorted(set(edge_ids)))
        vs = frozenset(x for e in es for x in e.pair)
        return Multigraph(vs, es)


# ----------------------------------------------------------------------
# transformations


def identify(g: Multigraph, zset: Iterable[int]) -> tuple[Multigraph, int]:
    """Merge the vertices of zset into one fresh vertex.

    Edges inside zset are dropped, edges with exactly one endpoint in zset
    are re-attached to the fresh vertex keeping their ids, the rest are
    untouched.  Returns (graph, fresh vertex id).
    """
    zs = frozenset(zset)
    if not zs:
        raise GraphError("cannot identify an empty vertex set")
    unknown = zs - g.vertices
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    z = max(g.vertices) + 1
    new_edges = []
    for e in g.edges:
        inside = (e.u in zs) + (e.v in zs)
        if inside == 2:
            continue
        if inside == 1:
            out = e.v if e.u in zs else e.u
            new_edges.append(Edge(e.id, out, z))
        else:
            new_edges.append(e)
    return Multigraph((g.vertices - zs) | {z}, tuple(new_edges)), z


def m_subdivide(g: Multigraph, u: int, v: int) -> tuple[Multigraph, int]:
    """Subdivide the whole u-v parallel class through a fresh vertex.

    The mu parallel u-v edges are replaced by mu u-z edges followed by mu
    z-v edges, all with fresh ids.  Returns (graph, z).
    """
    mu = g.multiplicity(u, v)
    if mu == 0:
        raise GraphError(f"vertices {u} and {v} are not adjacent")
    z = max(g.vertices) + 1
    next_id = max((e.id for e in g.edges), default=-1) + 1
    old = set(g.parallel_edges(u, v))
    kept = [e for e in g.edges if e.id not in old]
    for k in range(mu):
        kept.append(Edge(next_id + k, u, z))
    for k in range(mu):
        kept.append(Edge(next_id + mu + k, z, v))
    return Multigraph(g.vertices | {z}, tuple(kept)), z


# ----------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class Chain:
    """A path whose every consecutive pair has multiplicity >= 2.

    Internal vertices have exactly two distinct neighbors in the ambient
    graph; that constraint is what makes the chain usable for
    identification.
    """

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) < 2:
            raise GraphError("a chain needs at least two vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("chain vertices must be distinct")

    @property
    def first(self) -> int:
        return self.vertices[0]

    @property
    def last(self) -> int:
        return self.vertices[-1]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for a, b in zip(self.vertices, self.vertices[1:]):
            yield _norm(a, b)

    def __len__(self) -> int:
        return len(self.vertices)


def maximal_chains(g: Multigraph) -> tuple[Chain, ...]:
    """All maximal chains, each multiplicity->=2 pair covered at most once.

    A cycle of doubled pairs whose vertices all have two neighbors is
    returned cut open at its smallest vertex, heading toward that vertex's
    smaller neighbor; the closing pair then belongs to no chain.  Chains
    are oriented smaller-end-first and returned sorted.
    """
    doubled = sorted(p for p, m in g._mult.items() if m >= 2)
    done: set[tuple[int, int]] = set()
    chains: list[Chain] = []

    def step(prev: int, cur: int) -> int | None:
        # extend through cur only while it is a plain interior vertex
        if g.simple_degree(cur) != 2:
            return None
        a, b = g.neighbors(cur)
        nxt = b if a == prev else a
        if g.multiplicity(cur, nxt) < 2:
            return None
        return nxt

    for pair in doubled:
        if pair in done:
            continue
        a, b = pair
        seq = [a, b]
        done.add(pair)
        closed = False
        # grow at the tail, then at the head
        while True:
            nxt = step(seq[-2], seq[-1])
            if nxt is None:
                break
            if nxt == seq[0]:
                done.add(_norm(seq[-1], nxt))
                closed = True
                break
            seq.append(nxt)
            done.add(_norm(seq[-2], seq[-1]))
        if not closed:
            while True:
                nxt = step(seq[1], seq[0])
                if nxt is None:
                    break
                # a cycle would have closed while growing the tail
                seq.insert(0, nxt)
                done.add(_norm(seq[0], seq[1]))
        if closed:
            # canonical cut: smallest vertex first, toward its smaller neighbor
            m = min(seq)
            i = seq.index(m)
            ring = seq[i:] + seq[:i]
            if ring[-1] < ring[1]:
                ring = [ring[0]] + ring[1:][::-1]
            seq = ring
        elif seq[0] > seq[-1]:
            seq.reverse()
        chains.append(Chain(tuple(seq)))
    chains.sort(key=lambda c: c.vertices)
    return tuple(chains)


# ----------------------------------------------------------------------
# connectivity


def reachable(
    g: Multigraph,
    start: int,
    banned_vertices: Iterable[int] = (),
    banned_edges: Iterable[int] = (),
) -> frozenset[int]:
    """Vertices reachable from start avoiding the given vertices and edges."""
    bv = set(banned_vertices)
    be = set(banned_edges)
    if start in bv:
        return frozenset()
    if start not in g.vertices:
        raise GraphError(f"unknown vertex {start}")
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for eid in g.incident_edges(x):
            if eid in be:
                continue
            y = g.edge(eid).other(x)
            if y in bv or y in seen:
                continue
            seen.add(y)
            queue.append(y)
    return frozenset(seen)


def is_connected(g: Multigraph) -> bool:
    if len(g.vertices) <= 1:
        return True
    return len(reachable(g, min(g.vertices))) == len(g.vertices)


def find_path(
    g: Multigraph,
    sources: Iterable[int],
    targets: Iterable[int],
    banned_vertices: Iterable[int] = (),
    banned_edges: Iterable[int] = (),
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Shortest path from any source to any target, as (vertices, edge ids).

    Sources and targets must be disjoint.  The search never walks through
    a source or a target, so interior vertices lie outside both sets.
    Deterministic: breadth-first, sources in sorted order, edges by id.
    """
    src = sorted(set(sources))
    tgt = set(targets)
    bv = set(banned_vertices)
    if tgt & set(src):
        raise GraphError("sources and targets must be disjoint")
    be = set(banned_edges)
    parent: dict[int, tuple[int, int]] = {}
    seen = set(s for s in src if s not in bv)
    queue = deque(s for s in src if s not in bv)
    while queue:
        x = queue.popleft()
        for eid in g.incident_edges(x):
            if eid in be:
                continue
            y = g.edge(eid).other(x)
            if y in bv or y in seen:
                continue
            parent[y] = (x, eid)
            if y in tgt:
                vs = [y]
                es = []
                cur = y
                while cur not in src:
                    p, pe = parent[cur]
                    vs.append(p)
                    es.append(pe)
                    cur = p
                return tuple(reversed(vs)), tuple(reversed(es))
            seen.add(y)
            queue.append(y)
    return None


def biconnected_components(g: Multigraph) -> tuple[Multigraph, ...]:
    """Blocks of g as sub-multigraphs carrying every parallel edge.

    A pair of parallel edges forms a block of its own; isolated vertices
    belong to no block.  Blocks are sorted by their smallest vertex id,
    then smallest edge id.
    """
    simple = g.underlying_simple()
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    blocks_pairs: list[list[tuple[int, int]]] = []
    edge_stack: list[tuple[int, int]] = []

    for root in sorted(g.vertices):
        if root in index:
            continue
        # iterative DFS so deep graphs cannot overflow the stack
        stack: list[tuple[int, Iterator[int], int | None]] = []
        index[root] = low[root] = counter
        counter += 1
        stack.append((root, iter(simple.neighbors(root)), None))
        while stack:
            x, it, parent_v = stack[-1]
            advanced = False
            for y in it:
                if y == parent_v:
                    # skip one edge back to the parent, not all of them:
                    # parallel classes are contracted in `simple`, so a
                    # doubled pair to the parent still forms its own block
                    parent_v = None
                    stack[-1] = (x, it, None)
                    continue
                if y not in index:
                    index[y] = low[y] = counter
                    counter += 1
                    edge_stack.append(_norm(x, y))
                    stack.append((y, iter(simple.neighbors(y)), x))
                    advanced = True
                    break
                if index[y] < index[x]:
                    edge_stack.append(_norm(x, y))
                    low[x] = min(low[x], index[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                px = stack[-1][0]
                low[px] = min(low[px], low[x])
                if low[x] >= index[px]:
                    comp = []
                    while True:
                        pe = edge_stack.pop()
                        comp.append(pe)
                        if pe == _norm(px, x):
                            break
                    blocks_pairs.append(comp)

    out = []
    for comp in blocks_pairs:
        ids = [i for p in comp for i in g._parallel[p]]
        out.append(g.subgraph_from_edges(ids))
    out.sort(key=lambda b: (min(b.vertices), b.edges[0].id))
    return tuple(out)
