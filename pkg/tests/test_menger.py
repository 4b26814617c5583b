"""Exact temporal connectivity oracles and the labeling falsifier."""

import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from mengerian.multigraph import Multigraph
from mengerian.temporal import TemporalGraph, validate_walk
from mengerian.menger import (
    CutUndefinedError,
    ResourceLimitError,
    edge_menger,
    falsify_mengerian,
    max_disjoint_paths,
    menger_gap,
    min_vertex_cut,
)

from helpers import mg, random_multigraph
from oracles import (
    brute_c,
    brute_edge_c,
    brute_edge_p,
    brute_p,
    brute_reachable,
)


def tg(triples, vertices=None):
    pairs = [(u, v) for u, v, _ in triples]
    g = mg(pairs, vertices=vertices)
    return TemporalGraph.make(g, {i: lab for i, (_, _, lab) in enumerate(triples)})


# s=0 u=1 v=2 t=3 apex=4; one of the three obstruction shapes, with the
# labeling that forces a single path against a 2-cut
GEM = tg([
    (0, 1, 1),
    (1, 2, 2),
    (2, 3, 3),
    (4, 0, 2),
    (4, 1, 1),
    (4, 2, 2),
    (4, 3, 1),
])

TWO_ROUTES = tg([
    (0, 1, 1),
    (1, 3, 2),
    (0, 2, 1),
    (2, 3, 2),
])


def random_temporal(rng, n, m, lifetime=None):
    g = random_multigraph(rng, n, m)
    horizon = lifetime or m
    return TemporalGraph.make(
        g, {e.id: rng.randint(1, horizon) for e in g.edges})


class TestDisjointPaths:
    def test_two_routes(self):
        paths = max_disjoint_paths(TWO_ROUTES, 0, 3)
        assert len(paths) == 2
        seen = set()
        for p in paths:
            validate_walk(TWO_ROUTES, p.as_sequence())
            inner = set(p.vertices[1:-1])
            assert not inner & seen
            seen |= inner

    def test_gem_single_path(self):
        assert len(max_disjoint_paths(GEM, 0, 3)) == 1

    def test_label_order_blocks_second_route(self):
        # both static routes exist but one is scrambled in time
        t = tg([(0, 1, 2), (1, 3, 1), (0, 2, 1), (2, 3, 2)])
        assert len(max_disjoint_paths(t, 0, 3)) == 1

    def test_unreachable(self):
        t = tg([(0, 1, 1)], vertices=[0, 1, 2])
        assert max_disjoint_paths(t, 0, 2) == ()

    def test_size_guard(self):
        g = Multigraph.build(20, [(i, i + 1) for i in range(19)])
        t = TemporalGraph.make(g, {i: 1 for i in range(19)})
        with pytest.raises(ResourceLimitError):
            max_disjoint_paths(t, 0, 19)
        assert len(max_disjoint_paths(t, 0, 19, max_size=25)) == 1

    @given(st.integers(0, 400))
    def test_matches_brute(self, seed):
        rng = random.Random(seed)
        t = random_temporal(rng, rng.randint(2, 6), rng.randint(1, 8))
        vs = sorted(t.graph.vertices)
        s, d = rng.sample(vs, 2)
        assert len(max_disjoint_paths(t, s, d)) == brute_p(t, s, d)


class TestVertexCut:
    def test_gem_cut(self):
        # {u, v} leaves only s-w-t whose labels run 2 then 1
        assert min_vertex_cut(GEM, 0, 3) == frozenset({1, 2})

    def test_cut_kills_reachability(self):
        cut = min_vertex_cut(GEM, 0, 3)
        assert 3 not in brute_reachable(GEM, 0, banned_vertices=cut)

    def test_adjacent_rejected(self):
        with pytest.raises(CutUndefinedError):
            min_vertex_cut(TWO_ROUTES, 0, 1)

    def test_disconnected_is_empty(self):
        t = tg([(0, 1, 1)], vertices=[0, 1, 2])
        assert min_vertex_cut(t, 0, 2) == frozenset()

    def test_two_routes(self):
        assert min_vertex_cut(TWO_ROUTES, 0, 3) == frozenset({1, 2})

    @given(st.integers(0, 400))
    def test_matches_brute(self, seed):
        rng = random.Random(seed)
        t = random_temporal(rng, rng.randint(3, 6), rng.randint(1, 8))
        vs = sorted(t.graph.vertices)
        pairs = [(a, b) for a in vs for b in vs
                 if a != b and not t.graph.adjacent(a, b)]
        if not pairs:
            return
        s, d = pairs[seed % len(pairs)]
        assert len(min_vertex_cut(t, s, d)) == brute_c(t, s, d)


class TestMengerGap:
    def test_gem_gap(self):
        assert menger_gap(GEM, 0, 3) == (1, 2, 1)

    def test_two_routes_no_gap(self):
        gap = menger_gap(TWO_ROUTES, 0, 3)
        assert gap.gap == 0


class TestEdgeMenger:
    def test_parallel_pair(self):
        g = mg([(0, 1), (0, 1)])
        t = TemporalGraph.make(g, {0: 1, 1: 5})
        paths, cut = edge_menger(t, 0, 1)
        assert len(paths) == 2
        assert cut == frozenset({0, 1})
        assert sorted(p.edge_ids for p in paths) == [(0,), (1,)]

    def test_line(self):
        t = tg([(0, 1, 1), (1, 2, 2), (2, 3, 3)])
        paths, cut = edge_menger(t, 0, 3)
        assert len(paths) == 1
        assert len(cut) == 1

    def test_gem(self):
        paths, cut = edge_menger(GEM, 0, 3)
        assert len(paths) == 2
        assert 3 not in brute_reachable(GEM, 0, banned_edges=cut)

    def test_unreachable(self):
        t = tg([(0, 1, 3), (1, 2, 1)])
        paths, cut = edge_menger(t, 0, 2)
        assert paths == () and cut == frozenset()

    def test_paths_edge_disjoint_and_valid(self):
        t = tg([(0, 1, 1), (0, 1, 2), (1, 2, 2), (1, 2, 3), (0, 2, 1)])
        paths, cut = edge_menger(t, 0, 2)
        assert len(paths) == 3
        used = set()
        for p in paths:
            validate_walk(t, p.as_sequence())
            assert not set(p.edge_ids) & used
            used |= set(p.edge_ids)

    @given(st.integers(0, 300))
    def test_matches_brute(self, seed):
        rng = random.Random(seed)
        t = random_temporal(rng, rng.randint(2, 6), rng.randint(1, 9))
        vs = sorted(t.graph.vertices)
        s, d = rng.sample(vs, 2)
        paths, cut = edge_menger(t, s, d)
        assert len(paths) == brute_edge_p(t, s, d)
        assert len(cut) == brute_edge_c(t, s, d)


def naive_search_all_labelings(g):
    """Try every labeling with labels in [1, m] outright.

    Independent of the rank-sequence enumeration: if restricting to
    dense ranks ever missed a gap, this would find it on small inputs.
    """
    vs = sorted(g.vertices)
    ids = sorted(e.id for e in g.edges)
    pairs = [(s, t) for s in vs for t in vs
             if s != t and not g.adjacent(s, t)]
    for labels in product(range(1, len(ids) + 1), repeat=len(ids)):
        t = TemporalGraph.make(g, dict(zip(ids, labels)))
        for s, d in pairs:
            try:
                cut = min_vertex_cut(t, s, d)
            except CutUndefinedError:  # pragma: no cover
                continue
            if len(cut) <= 1:
                continue
            if len(max_disjoint_paths(t, s, d)) < len(cut):
                return t, s, d
    return None


class TestFalsify:
    def test_path_is_mengerian(self):
        assert falsify_mengerian(mg([(0, 1), (1, 2)])) is None

    def test_doubled_triangle_is_mengerian(self):
        assert falsify_mengerian(mg([(0, 1), (0, 1), (1, 2), (0, 2)])) is None

    def test_gem_found_exhaustively(self):
        cx = falsify_mengerian(GEM.graph)
        assert cx is not None
        gap = menger_gap(cx.labeled, cx.s, cx.t)
        assert gap.paths == len(cx.paths) < len(cx.cut) == gap.cut
        assert not cx.labeled.graph.adjacent(cx.s, cx.t)
        assert cx.labeled.graph == GEM.graph

    def test_witness_claims_check_out(self):
        cx = falsify_mengerian(GEM.graph)
        for p in cx.paths:
            validate_walk(cx.labeled, p.as_sequence())
        assert cx.t not in brute_reachable(cx.labeled, cx.s,
                                           banned_vertices=cx.cut)

    def test_gem_found_by_sampling(self):
        cx = falsify_mengerian(GEM.graph, samples=3000, seed=7)
        assert cx is not None
        assert len(cx.paths) < len(cx.cut)

    def test_sampling_deterministic(self):
        a = falsify_mengerian(GEM.graph, samples=500, seed=3)
        b = falsify_mengerian(GEM.graph, samples=500, seed=3)
        if a is None:
            assert b is None
        else:
            assert (a.s, a.t) == (b.s, b.t)
            assert a.labeled.times == b.labeled.times

    def test_edge_budget_guard(self):
        g = mg([(i, i + 1) for i in range(8)])
        with pytest.raises(ResourceLimitError):
            falsify_mengerian(g)
        assert falsify_mengerian(g, max_edges=8) is None

    @given(st.integers(0, 60))
    def test_agrees_with_naive_search(self, seed):
        rng = random.Random(seed)
        g = random_multigraph(rng, rng.randint(3, 5), rng.randint(2, 4))
        ours = falsify_mengerian(g)
        naive = naive_search_all_labelings(g)
        if naive is None:
            assert ours is None
        else:
            assert ours is not None
            gap = menger_gap(ours.labeled, ours.s, ours.t)
            assert gap.gap >= 1
