"""From an embedding to a concrete counterexample labeling.

An m-subdivision inherits the pattern's reference labeling hop by hop:
every hop of a route receives the label set of its pattern pair, so the
subdivided conduit admits exactly the same arrival times as the pattern
edges it replaces.  The rest of the host is then labeled so it cannot
participate: everything touching the embedded target fires too early,
everything else too late to ever reach the target again.
"""

from __future__ import annotations

from dataclasses import dataclass

from .menger import CutUndefinedError, max_disjoint_paths, min_vertex_cut
from .multigraph import Multigraph
from .patterns import MEmbedding
from .temporal import TemporalGraph

DEFAULT_VERIFY_MAX_VERTICES = 12


def lift_labeling(emb: MEmbedding) -> dict[int, int]:
    """Labels for the embedded subgraph's edges only.

    Per hop, the chosen host edges in ascending id order take the
    pattern pair's reference labels in ascending order.
    """
    out: dict[int, int] = {}
    for pair, hops in emb.hop_edges.items():
        labels = sorted(emb.pattern.pair_labels(*pair))
        for hop in hops:
            for eid, lab in zip(sorted(hop), labels):
                out[eid] = lab
    return out


def extend_to_host(host: Multigraph, emb: MEmbedding) -> dict[int, int]:
    """A labeling of every host edge preserving the embedded gap.

    Embedded edges shift up by one so that label 1 stays free; unused
    edges at the embedded target get 1 (nothing arrives that early, so
    they are dead ends), all other unused edges get a label above the
    whole embedded range (walks entering them can never come back down).
    """
    lifted = lift_labeling(emb)
    late = max(lifted.values()) + 2
    target = emb.target
    out: dict[int, int] = {}
    for e in host.edges:
        if e.id in lifted:
            out[e.id] = lifted[e.id] + 1
        elif target in e.pair:
            out[e.id] = 1
        else:
            out[e.id] = late
    return out


def make_witness(host: Multigraph, emb: MEmbedding) -> TemporalGraph:
    return TemporalGraph.make(host, extend_to_host(host, emb))


@dataclass(frozen=True)
class WitnessReport:
    """Oracle measurements of a claimed counterexample."""

    source: int
    target: int
    path_count: int
    cut_size: int | None  # None: endpoints adjacent, no cut exists

    @property
    def cut_defined(self) -> bool:
        return self.cut_size is not None

    @property
    def confirmed(self) -> bool:
        return self.cut_size is not None and self.path_count < self.cut_size


def verify_witness(
    tg: TemporalGraph, s: int, t: int,
    max_size: int = DEFAULT_VERIFY_MAX_VERTICES,
) -> WitnessReport:
    """Measure a claimed counterexample with the exact oracles."""
    paths = max_disjoint_paths(tg, s, t, max_size=max_size)
    try:
        cut = min_vertex_cut(tg, s, t, max_size=max_size)
    except CutUndefinedError:
        return WitnessReport(s, t, len(paths), None)
    return WitnessReport(s, t, len(paths), len(cut))
