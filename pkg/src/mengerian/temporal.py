"""Time labels on multigraphs, temporal walks and reachability.

A time-function assigns a positive integer label to every edge.  A walk
is temporal when consecutive edge labels never decrease, so an edge can
be traversed at its own label after arriving at the same label
(non-strict model).  Only the relative order of labels matters to any
question asked here, which `canonicalize_labels` makes explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .multigraph import GraphError, Multigraph


class WalkError(ValueError):
    """A sequence failed to be a temporal walk; `index` names the spot."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"position {index}: {message}")


@dataclass(frozen=True)
class TemporalGraph:
    graph: Multigraph
    entries: tuple[tuple[int, int], ...]  # (edge id, label), sorted by id

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))
        ids = [i for i, _ in self.entries]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate edge id in time labels")
        if set(ids) != {e.id for e in self.graph.edges}:
            raise GraphError("time labels must cover exactly the edges of the graph")
        for i, lab in self.entries:
            if not isinstance(lab, int) or lab < 1:
                raise GraphError(f"edge {i}: labels must be positive integers, got {lab!r}")

    @staticmethod
    def make(graph: Multigraph, times: Mapping[int, int]) -> "TemporalGraph":
        return TemporalGraph(graph, tuple(times.items()))

    @cached_property
    def times(self) -> dict[int, int]:
        return dict(self.entries)

    def label(self, edge_id: int) -> int:
        try:
            return self.times[edge_id]
        except KeyError:
            raise GraphError(f"no edge with id {edge_id}") from None

    @property
    def lifetime(self) -> int:
        return max((lab for _, lab in self.entries), default=0)


@dataclass(frozen=True)
class TemporalWalk:
    """Alternating vertex/edge sequence; may revisit vertices."""

    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) != len(self.edge_ids) + 1 or not self.vertices:
            raise GraphError("walk needs n edges and n+1 vertices")

    @property
    def first(self) -> int:
        return self.vertices[0]

    @property
    def last(self) -> int:
        return self.vertices[-1]

    @property
    def internal(self) -> frozenset[int]:
        return frozenset(self.vertices[1:-1])

    def as_sequence(self) -> tuple[int, ...]:
        """Interleaved v0, e1, v1, ... form accepted by validate_walk."""
        out = [self.vertices[0]]
        for eid, v in zip(self.edge_ids, self.vertices[1:]):
            out.append(eid)
            out.append(v)
        return tuple(out)

    def __len__(self) -> int:
        return len(self.edge_ids)


@dataclass(frozen=True)
class TemporalPath(TemporalWalk):
    """A temporal walk with pairwise distinct vertices."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("path vertices must be distinct")


def validate_walk(tg: TemporalGraph, seq: Sequence[int]) -> TemporalWalk:
    """Check an alternating sequence v0, e1, v1, e2, v2, ... and wrap it.

    Raises WalkError naming the first offending position.
    """
    if len(seq) % 2 == 0 or not seq:
        raise WalkError(len(seq), "sequence must alternate v0, e1, v1, ... (odd length)")
    vertices = list(seq[0::2])
    edge_ids = list(seq[1::2])
    for i, v in enumerate(vertices):
        if not tg.graph.has_vertex(v):
            raise WalkError(2 * i, f"unknown vertex {v}")
    prev_label = None
    for i, eid in enumerate(edge_ids):
        pos = 2 * i + 1
        try:
            e = tg.graph.edge(eid)
        except GraphError:
            raise WalkError(pos, f"unknown edge {eid}") from None
        if {e.u, e.v} != {vertices[i], vertices[i + 1]}:
            raise WalkError(pos, f"edge {eid} does not join {vertices[i]} and {vertices[i + 1]}")
        lab = tg.label(eid)
        if prev_label is not None and lab < prev_label:
            raise WalkError(pos, f"label {lab} after {prev_label} decreases")
        prev_label = lab
    return TemporalWalk(tuple(vertices), tuple(edge_ids))


def walk_to_path(tg: TemporalGraph, walk: TemporalWalk) -> TemporalPath:
    """Splice out revisits until the walk is a path.

    Each splice joins the first arrival at a repeated vertex to the last
    departure from it; the label chain stays non-decreasing because the
    removed stretch sat between the two.
    """
    vs = list(walk.vertices)
    es = list(walk.edge_ids)
    while True:
        seen: dict[int, int] = {}
        dup = None
        for i, v in enumerate(vs):
            if v in seen:
                dup = v
                break
            seen[v] = i
        if dup is None:
            break
        i = seen[dup]
        j = len(vs) - 1 - vs[::-1].index(dup)
        vs = vs[: i + 1] + vs[j + 1 :]
        es = es[:i] + es[j:]
    return TemporalPath(tuple(vs), tuple(es))


def earliest_arrival(
    tg: TemporalGraph,
    source: int,
    banned_vertices: Iterable[int] = (),
    banned_edges: Iterable[int] = (),
) -> dict[int, int]:
    """Earliest arrival label at each reachable vertex (source maps to 0).

    Edges are processed in (label, id) order; equal labels are iterated to
    a fixed point because an arrival can be extended at the same label.
    """
    arr, _ = _earliest(tg, source, set(banned_vertices), set(banned_edges))
    return arr


def earliest_path(
    tg: TemporalGraph,
    source: int,
    target: int,
    banned_vertices: Iterable[int] = (),
    banned_edges: Iterable[int] = (),
) -> TemporalPath | None:
    """A temporal path realizing the earliest arrival, None when unreachable."""
    arr, parent = _earliest(tg, source, set(banned_vertices), set(banned_edges))
    if target not in arr:
        return None
    if target == source:
        return TemporalPath((source,), ())
    vs = [target]
    es = []
    cur = target
    while cur != source:
        p, eid = parent[cur]
        vs.append(p)
        es.append(eid)
        cur = p
    return TemporalPath(tuple(reversed(vs)), tuple(reversed(es)))


def _earliest(
    tg: TemporalGraph, source: int, bv: set[int], be: set[int]
) -> tuple[dict[int, int], dict[int, tuple[int, int]]]:
    if not tg.graph.has_vertex(source):
        raise GraphError(f"unknown vertex {source}")
    arr: dict[int, int] = {}
    parent: dict[int, tuple[int, int]] = {}
    if source in bv:
        return arr, parent
    arr[source] = 0
    ordered = sorted(tg.entries, key=lambda it: (it[1], it[0]))
    i = 0
    while i < len(ordered):
        j = i
        lab = ordered[i][1]
        while j < len(ordered) and ordered[j][1] == lab:
            j += 1
        group = ordered[i:j]
        changed = True
        while changed:
            changed = False
            for eid, _ in group:
                if eid in be:
                    continue
                e = tg.graph.edge(eid)
                if e.u in bv or e.v in bv:
                    continue
                for a, b in ((e.u, e.v), (e.v, e.u)):
                    if a in arr and arr[a] <= lab and b not in arr:
                        arr[b] = lab
                        parent[b] = (a, eid)
                        changed = True
        i = j
    return arr, parent


def reverse(tg: TemporalGraph) -> TemporalGraph:
    """Flip time: label t becomes lifetime + 1 - t.

    A temporal walk read backwards is temporal in the reversed graph, so
    source/target questions swap roles.
    """
    t = tg.lifetime
    return TemporalGraph(tg.graph, tuple((i, t + 1 - lab) for i, lab in tg.entries))


def remove(
    tg: TemporalGraph, vertices: Iterable[int] = (), edges: Iterable[int] = ()
) -> TemporalGraph:
    """Delete vertices and edges, keeping the labels of what survives."""
    drop = set(edges)
    for i in drop:
        tg.graph.edge(i)  # unknown ids are an error even if a vertex removal covers them
    g = tg.graph.remove_vertices(vertices)
    g = g.remove_edges(drop & {e.id for e in g.edges})
    keep = {e.id for e in g.edges}
    return TemporalGraph(g, tuple(it for it in tg.entries if it[0] in keep))


def canonicalize_labels(tg: TemporalGraph) -> TemporalGraph:
    """Replace labels by their dense ranks 1..k; the weak order is preserved."""
    distinct = sorted({lab for _, lab in tg.entries})
    rank = {lab: i + 1 for i, lab in enumerate(distinct)}
    return TemporalGraph(tg.graph, tuple((i, rank[lab]) for i, lab in tg.entries))
