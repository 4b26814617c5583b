"""Shared construction and brute-force comparison helpers for the tests."""

from itertools import permutations

from mengerian.multigraph import Multigraph


def mg(pairs, vertices=None):
    """Multigraph from endpoint pairs; vertex set defaults to the endpoints."""
    if vertices is None:
        vertices = sorted({x for p in pairs for x in p})
    return Multigraph.build(vertices, pairs)


def mult_map(g):
    return {p: g.multiplicity(*p) for p in g.adjacent_pairs()}


def multigraph_isomorphic(g1, g2, max_vertices=9):
    """Brute-force isomorphism respecting multiplicities.  Small graphs only."""
    v1, v2 = sorted(g1.vertices), sorted(g2.vertices)
    if len(v1) != len(v2) or len(g1.edges) != len(g2.edges):
        return False
    if len(v1) > max_vertices:
        raise ValueError(f"refusing brute-force isomorphism beyond {max_vertices} vertices")
    deg1 = sorted((g1.simple_degree(v), g1.edge_degree(v)) for v in v1)
    deg2 = sorted((g2.simple_degree(v), g2.edge_degree(v)) for v in v2)
    if deg1 != deg2:
        return False
    m2 = mult_map(g2)
    for perm in permutations(v2):
        img = dict(zip(v1, perm))
        ok = True
        for (a, b), m in mult_map(g1).items():
            x, y = img[a], img[b]
            if m2.get((x, y) if x < y else (y, x), 0) != m:
                ok = False
                break
        if ok:
            return True
    return False


def canonical_key(g):
    """Canonical form usable for deduplicating small multigraphs up to isomorphism."""
    vs = sorted(g.vertices)
    n = len(vs)
    if n > 7:
        raise ValueError("canonical_key is for small graphs")
    best = None
    base = {v: i for i, v in enumerate(vs)}
    mm = mult_map(g)
    for perm in permutations(range(n)):
        entries = []
        for (a, b), m in mm.items():
            x, y = perm[base[a]], perm[base[b]]
            entries.append((min(x, y), max(x, y), m))
        key = (n, tuple(sorted(entries)))
        if best is None or key < best:
            best = key
    return best


def random_multigraph(rng, n, m, max_mult=None):
    """Seeded random multigraph on vertices 0..n-1 with m edges."""
    pairs = []
    counts = {}
    attempts = 0
    while len(pairs) < m and attempts < 50 * m + 50:
        attempts += 1
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if max_mult is not None and counts.get(key, 0) >= max_mult:
            continue
        counts[key] = counts.get(key, 0) + 1
        pairs.append(key)
    return Multigraph.build(n, pairs)
