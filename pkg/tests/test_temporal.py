import random

import pytest
from hypothesis import given, strategies as st

from mengerian.multigraph import GraphError, Multigraph
from mengerian.temporal import (
    TemporalGraph,
    TemporalPath,
    TemporalWalk,
    WalkError,
    canonicalize_labels,
    earliest_arrival,
    earliest_path,
    remove,
    reverse,
    validate_walk,
    walk_to_path,
)
from helpers import mg, random_multigraph


def tg(pairs_with_labels, vertices=None):
    pairs = [(u, v) for u, v, _ in pairs_with_labels]
    g = mg(pairs, vertices=vertices)
    return TemporalGraph.make(g, {i: lab for i, (_, _, lab) in enumerate(pairs_with_labels)})


# 0-1-2-3 path labeled 1,2,3 with a late shortcut 0-3
LINE = tg([(0, 1, 1), (1, 2, 2), (2, 3, 3), (0, 3, 9)])


def random_temporal(rng, n, m, max_label=None):
    g = random_multigraph(rng, n, m)
    top = max_label or max(1, len(g.edges))
    return TemporalGraph.make(g, {e.id: rng.randint(1, top) for e in g.edges})


class TestConstruction:
    def test_labels_must_cover_edges(self):
        g = mg([(0, 1), (1, 2)])
        with pytest.raises(GraphError):
            TemporalGraph.make(g, {0: 1})
        with pytest.raises(GraphError):
            TemporalGraph.make(g, {0: 1, 1: 2, 7: 3})

    def test_labels_positive_ints(self):
        g = mg([(0, 1)])
        with pytest.raises(GraphError):
            TemporalGraph.make(g, {0: 0})
        with pytest.raises(GraphError):
            TemporalGraph.make(g, {0: -3})

    def test_lifetime(self):
        assert LINE.lifetime == 9
        assert TemporalGraph.make(Multigraph.build(2, []), {}).lifetime == 0

    def test_value_semantics(self):
        other = tg([(0, 1, 1), (1, 2, 2), (2, 3, 3), (0, 3, 9)])
        assert other == LINE


class TestWalkValidation:
    def test_valid_walk(self):
        w = validate_walk(LINE, [0, 0, 1, 1, 2, 2, 3])
        assert isinstance(w, TemporalWalk)
        assert w.first == 0 and w.last == 3
        assert w.internal == frozenset({1, 2})

    def test_single_vertex_walk(self):
        w = validate_walk(LINE, [2])
        assert len(w) == 0

    def test_label_decrease_flagged(self):
        with pytest.raises(WalkError) as exc:
            validate_walk(LINE, [0, 3, 3, 2, 2])
        assert exc.value.index == 3

    def test_wrong_endpoint_flagged(self):
        with pytest.raises(WalkError) as exc:
            validate_walk(LINE, [0, 0, 2])
        assert exc.value.index == 1

    def test_unknown_vertex_and_edge(self):
        with pytest.raises(WalkError) as exc:
            validate_walk(LINE, [0, 0, 9])
        assert exc.value.index == 2
        with pytest.raises(WalkError) as exc:
            validate_walk(LINE, [0, 77, 1])
        assert exc.value.index == 1

    def test_even_length_rejected(self):
        with pytest.raises(WalkError):
            validate_walk(LINE, [0, 0])

    def test_equal_labels_allowed(self):
        t = tg([(0, 1, 2), (1, 2, 2)])
        w = validate_walk(t, [0, 0, 1, 1, 2])
        assert w.last == 2


class TestWalkToPath:
    def test_already_a_path(self):
        w = validate_walk(LINE, [0, 0, 1, 1, 2])
        p = walk_to_path(LINE, w)
        assert p.vertices == (0, 1, 2)
        assert p.edge_ids == (0, 1)

    def test_detour_spliced_out(self):
        t = tg([(0, 1, 1), (1, 2, 2), (1, 2, 3), (1, 3, 4)])
        w = validate_walk(t, [0, 0, 1, 1, 2, 2, 1, 3, 3])
        p = walk_to_path(t, w)
        assert p.vertices == (0, 1, 3)
        assert p.edge_ids == (0, 3)

    @given(st.data())
    def test_fuzz_always_yields_valid_path(self, data):
        rng = random.Random(data.draw(st.integers(0, 10_000)))
        t = random_temporal(rng, rng.randint(2, 6), rng.randint(1, 10))
        # grow a random temporal walk greedily
        start = rng.choice(sorted(t.graph.vertices))
        seq = [start]
        cur, lab = start, 0
        for _ in range(rng.randint(0, 8)):
            options = [
                eid for eid in t.graph.incident_edges(cur) if t.label(eid) >= lab
            ]
            if not options:
                break
            eid = rng.choice(options)
            cur = t.graph.edge(eid).other(cur)
            lab = t.label(eid)
            seq += [eid, cur]
        walk = validate_walk(t, seq)
        path = walk_to_path(t, walk)
        assert path.first == walk.first and path.last == walk.last
        # the path must itself validate as a temporal walk
        flat = [path.vertices[0]]
        for eid, v in zip(path.edge_ids, path.vertices[1:]):
            flat += [eid, v]
        validate_walk(t, flat)
        assert isinstance(path, TemporalPath)


class TestEarliestArrival:
    def test_line(self):
        arr = earliest_arrival(LINE, 0)
        assert arr == {0: 0, 1: 1, 2: 2, 3: 3}

    def test_decreasing_blocks(self):
        t = tg([(0, 1, 5), (1, 2, 1)])
        arr = earliest_arrival(t, 0)
        assert arr == {0: 0, 1: 5}

    def test_same_label_chains(self):
        t = tg([(0, 1, 4), (1, 2, 4), (2, 3, 4)])
        assert earliest_arrival(t, 0)[3] == 4

    def test_banned(self):
        assert 3 in earliest_arrival(LINE, 0, banned_vertices=[2])
        assert earliest_arrival(LINE, 0, banned_vertices=[2])[3] == 9
        assert earliest_arrival(LINE, 0, banned_vertices=[2], banned_edges=[3]) == {0: 0, 1: 1}
        assert earliest_arrival(LINE, 0, banned_vertices=[0]) == {}

    def test_earliest_path_extracts(self):
        p = earliest_path(LINE, 0, 3)
        assert p.vertices == (0, 1, 2, 3)
        assert p.edge_ids == (0, 1, 2)
        assert earliest_path(LINE, 0, 0).vertices == (0,)
        t = tg([(0, 1, 3), (1, 2, 1)])
        assert earliest_path(t, 0, 2) is None

    @given(st.integers(0, 5000))
    def test_path_realizes_arrival(self, seed):
        rng = random.Random(seed)
        t = random_temporal(rng, rng.randint(2, 7), rng.randint(1, 12))
        arr = earliest_arrival(t, 0)
        for v in sorted(t.graph.vertices):
            p = earliest_path(t, 0, v)
            if v not in arr:
                assert p is None
                continue
            assert p is not None and p.last == v
            if p.edge_ids:
                labs = [t.label(e) for e in p.edge_ids]
                assert labs == sorted(labs)
                assert labs[-1] == arr[v]

    @given(st.integers(0, 5000))
    def test_matches_bruteforce_reachability(self, seed):
        rng = random.Random(seed)
        t = random_temporal(rng, rng.randint(2, 6), rng.randint(1, 9))
        reach = set(earliest_arrival(t, 1 % len(t.graph.vertices)))
        brute = brute_reachable(t, 1 % len(t.graph.vertices))
        assert reach == brute


def brute_reachable(t, s):
    """Grow (vertex, arrival) states edge by edge; no path structure reused."""
    states = {(s, 0)}
    frontier = [(s, 0)]
    while frontier:
        v, a = frontier.pop()
        for eid in t.graph.incident_edges(v):
            lab = t.label(eid)
            if lab < a:
                continue
            w = t.graph.edge(eid).other(v)
            if (w, lab) not in states:
                states.add((w, lab))
                frontier.append((w, lab))
    return {v for v, _ in states}


class TestReverse:
    def test_labels_flip(self):
        r = reverse(LINE)
        assert r.times == {0: 9, 1: 8, 2: 7, 3: 1}

    def test_involution(self):
        assert reverse(reverse(LINE)) == LINE

    def test_reachability_swaps_direction(self):
        t = tg([(0, 1, 1), (1, 2, 2)])
        assert 2 in earliest_arrival(t, 0)
        r = reverse(t)
        assert 0 in earliest_arrival(r, 2)

    @given(st.integers(0, 3000))
    def test_duality_of_reachability(self, seed):
        rng = random.Random(seed)
        t = random_temporal(rng, rng.randint(2, 6), rng.randint(1, 9))
        r = reverse(t)
        for s in sorted(t.graph.vertices):
            fwd = earliest_arrival(t, s)
            for v in sorted(t.graph.vertices):
                assert (v in fwd) == (s in earliest_arrival(r, v))


class TestRemove:
    def test_remove_vertices_and_edges(self):
        t = remove(LINE, vertices=[2])
        assert set(t.times) == {0, 3}
        t = remove(LINE, edges=[0, 3])
        assert set(t.times) == {1, 2}

    def test_unknown_edge_rejected(self):
        with pytest.raises(GraphError):
            remove(LINE, edges=[55])

    def test_vertex_removal_covers_edge_ids(self):
        t = remove(LINE, vertices=[2], edges=[1])
        assert set(t.times) == {0, 3}


class TestCanonicalize:
    def test_dense_ranks(self):
        t = tg([(0, 1, 5), (1, 2, 17), (2, 3, 17), (0, 3, 99)])
        c = canonicalize_labels(t)
        assert c.times == {0: 1, 1: 2, 2: 2, 3: 3}

    def test_idempotent(self):
        c = canonicalize_labels(LINE)
        assert canonicalize_labels(c) == c

    @given(st.integers(0, 3000))
    def test_reachability_invariant(self, seed):
        rng = random.Random(seed)
        t = random_temporal(rng, rng.randint(2, 6), rng.randint(1, 9), max_label=40)
        c = canonicalize_labels(t)
        for s in sorted(t.graph.vertices):
            assert set(earliest_arrival(t, s)) == set(earliest_arrival(c, s))
