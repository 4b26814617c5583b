"""Command line interface: graph files, JSON reports, DOT drawings, generators.

Graph file format, one record per line (`#` starts a comment):

    v <name>              declare a vertex
    e <u> <v> [<label>]   declare one edge; repeat lines for parallel edges

Names are whitespace-free and unique; vertex ids follow declaration
order.  Time labels are positive integers and appear on all edges or on
none.  Exit codes: 0 Mengerian / nothing found / query answered,
1 NonMengerian / counterexample found, 2 usage, parse, domain, or
resource error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from .menger import (
    DEFAULT_MAX_EDGES_EXHAUSTIVE,
    DEFAULT_MAX_VERTICES,
    CutUndefinedError,
    ResourceLimitError,
    edge_menger,
    falsify_mengerian,
    max_disjoint_paths,
    min_vertex_cut,
)
from .multigraph import GraphError, Multigraph, m_subdivide
from .patterns import PATTERNS, MEmbedding
from .recognizer import recognize, recognize_with_proof
from .temporal import TemporalGraph
from .witness import DEFAULT_VERIFY_MAX_VERTICES

MAX_SIZE_ENV = "MENGERIAN_MAX_SIZE"


class GraphFileError(ValueError):
    """Malformed graph file; the message carries the line number."""


# ----------------------------------------------------------------------
# graph files


class NamedGraph:
    """A parsed graph file: multigraph, vertex names, optional labels."""

    def __init__(self, graph: Multigraph, names: tuple[str, ...],
                 times: dict[int, int] | None):
        self.graph = graph
        self.names = names
        self.times = times
        self._ids = {name: i for i, name in enumerate(names)}

    def name(self, v: int) -> str:
        return self.names[v]

    def id(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise GraphFileError(f"unknown vertex {name!r}") from None

    def temporal(self) -> TemporalGraph:
        if self.times is None:
            raise GraphFileError("graph file carries no time labels")
        return TemporalGraph.make(self.graph, self.times)


def parse_graphfile(text: str) -> NamedGraph:
    names: list[str] = []
    ids: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    labels: list[int] = []
    labeled: bool | None = None  # decided by the first edge line

    def fail(lineno: int, msg: str) -> GraphFileError:
        return GraphFileError(f"line {lineno}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "v":
            if len(fields) != 2:
                raise fail(lineno, "expected: v <name>")
            name = fields[1]
            if name in ids:
                raise fail(lineno, f"duplicate vertex {name!r}")
            ids[name] = len(names)
            names.append(name)
        elif fields[0] == "e":
            if len(fields) not in (3, 4):
                raise fail(lineno, "expected: e <u> <v> [<label>]")
            for name in fields[1:3]:
                if name not in ids:
                    raise fail(lineno, f"undeclared vertex {name!r}")
            u, v = ids[fields[1]], ids[fields[2]]
            if u == v:
                raise fail(lineno, f"self-loop at {fields[1]!r}")
            has_label = len(fields) == 4
            if labeled is None:
                labeled = has_label
            elif labeled != has_label:
                raise fail(lineno, "labels must appear on all edges or on none")
            if has_label:
                try:
                    lab = int(fields[3])
                except ValueError:
                    lab = 0
                if lab < 1:
                    raise fail(lineno, f"label must be a positive integer, got {fields[3]!r}")
                labels.append(lab)
            pairs.append((u, v))
        else:
            raise fail(lineno, f"unknown directive {fields[0]!r}")

    graph = Multigraph.build(range(len(names)), pairs)
    times = dict(enumerate(labels)) if labeled else None
    return NamedGraph(graph, tuple(names), times)


def load_graphfile(path: str) -> NamedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graphfile(fh.read())


def emit_graphfile(graph: Multigraph, names: tuple[str, ...] | None = None,
                   times: dict[int, int] | None = None) -> str:
    """Deterministic text form; parse(emit(g)) reproduces g exactly."""
    if names is None:
        names = tuple(str(v) for v in sorted(graph.vertices))
    order = {v: i for i, v in enumerate(sorted(graph.vertices))}
    out = [f"v {names[order[v]]}" for v in sorted(graph.vertices)]
    for e in graph.edges:
        line = f"e {names[order[e.u]]} {names[order[e.v]]}"
        if times is not None:
            line += f" {times[e.id]}"
        out.append(line)
    return "\n".join(out) + "\n" if out else ""


# ----------------------------------------------------------------------
# report emission

_SEGMENT_COLORS = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                   "#66a61e", "#e6ab02", "#a6761d", "#666666")


def _embedding_json(named: NamedGraph, emb: MEmbedding) -> dict:
    segments = {}
    for (a, b), route in sorted(emb.routes.items()):
        segments[f"{a},{b}"] = {
            "route": [named.name(v) for v in route],
            "hops": [sorted(h) for h in emb.hop_edges[(a, b)]],
        }
    return {
        "pattern": emb.pattern.name,
        "vertex_roles": {str(i): n for i, n in emb.pattern.vertex_names},
        "branch": {str(i): named.name(v) for i, v in sorted(emb.branch.items())},
        "segments": segments,
    }


def embedding_from_json(named: NamedGraph, data: dict) -> MEmbedding:
    """Rebuild an embedding reported against the same graph file."""
    pattern = {p.name: p for p in PATTERNS}[data["pattern"]]
    branch = {int(k): named.id(v) for k, v in data["branch"].items()}
    routes = {}
    hop_edges = {}
    for key, seg in data["segments"].items():
        a, b = (int(x) for x in key.split(","))
        routes[(a, b)] = tuple(named.id(v) for v in seg["route"])
        hop_edges[(a, b)] = tuple(tuple(h) for h in seg["hops"])
    return MEmbedding(pattern, branch, routes, hop_edges)


def _witness_json(named: NamedGraph, proof) -> dict:
    report = proof.report
    if report is None:
        status = "skipped"
    elif not report.cut_defined:
        status = "cut-undefined"
    elif report.confirmed:
        status = "confirmed"
    else:
        status = "unconfirmed"  # pragma: no cover - no known host reaches this
    return {
        "times": {str(i): lab for i, lab in proof.labeled.entries},
        "s": named.name(proof.source),
        "t": named.name(proof.target),
        "claimed_p": 1,
        "claimed_c": 2,
        "status": status,
        "measured_p": None if report is None else report.path_count,
        "measured_c": None if report is None else report.cut_size,
    }


def _crossed_json(named: NamedGraph, cs) -> dict:
    part = lambda s: sorted(named.name(v) for v in s)
    return {
        "kind": cs.kind,
        "chain": [named.name(v) for v in cs.chain.vertices],
        "corners": [named.name(v) for v in cs.corners],
        "a1": part(cs.a1),
        "a2": part(cs.a2),
        "b2": part(cs.b2),
        "b1": None if cs.b1 is None else part(cs.b1),
    }


def report_json(named: NamedGraph, verdict, proof, elapsed_ms: float) -> dict:
    emb = verdict.embedding
    return {
        "verdict": "mengerian" if verdict.mengerian else "non_mengerian",
        "pattern": None if emb is None else emb.pattern.name,
        "embedding": None if emb is None else _embedding_json(named, emb),
        "witness": None if proof is None else _witness_json(named, proof),
        "diagnostics": {
            "chains_examined": verdict.chains_examined,
            "crossed_structures": [_crossed_json(named, c) for c in verdict.crossed],
            "elapsed_ms": round(elapsed_ms, 3),
        },
    }


def emit_dot(named: NamedGraph, emb: MEmbedding | None = None) -> str:
    """DOT drawing; every parallel edge drawn, embedding segments colored."""
    color_of: dict[int, str] = {}
    branch_vertices: set[int] = set()
    if emb is not None:
        for idx, (pair, hops) in enumerate(sorted(emb.hop_edges.items())):
            for hop in hops:
                for eid in hop:
                    color_of[eid] = _SEGMENT_COLORS[idx % len(_SEGMENT_COLORS)]
        branch_vertices = set(emb.branch.values())
    out = ["graph mengerian {"]
    for v in sorted(named.graph.vertices):
        attrs = ['shape=circle']
        if v in branch_vertices:
            attrs += ['style=filled', 'fillcolor="#fdd49e"']
        out.append(f'  "{named.name(v)}" [{", ".join(attrs)}];')
    for e in named.graph.edges:
        attrs = []
        if e.id in color_of:
            attrs = [f'color="{color_of[e.id]}"', "penwidth=2.2"]
        elif emb is not None:
            attrs = ['color="#bbbbbb"']
        suffix = f' [{", ".join(attrs)}]' if attrs else ""
        out.append(f'  "{named.name(e.u)}" -- "{named.name(e.v)}"{suffix};')
    out.append("}")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------
# generators


def random_multigraph(n: int, m: int, max_mult: int, rng: random.Random) -> Multigraph:
    """Random multigraph; a spanning tree comes first whenever m allows."""
    if n < 2 and m > 0:
        raise GraphFileError(f"cannot place {m} edges on {n} vertices")
    if n >= 2 and m > max_mult * n * (n - 1) // 2:
        raise GraphFileError(f"cannot place {m} edges with multiplicity <= {max_mult}")
    pairs: list[tuple[int, int]] = []
    mult: dict[tuple[int, int], int] = {}

    def put(u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        if mult.get(key, 0) >= max_mult:
            return False
        mult[key] = mult.get(key, 0) + 1
        pairs.append(key)
        return True

    if n >= 2 and m >= n - 1:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            put(order[rng.randrange(i)], order[i])
    while len(pairs) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            put(u, v)
    return Multigraph.build(n, pairs)


def subdivided_pattern(name: str, ops: int, rng: random.Random) -> Multigraph:
    g = {p.name: p for p in PATTERNS}[name].graph
    for _ in range(ops):
        choices = sorted({e.pair for e in g.edges})
        u, v = choices[rng.randrange(len(choices))]
        g, _ = m_subdivide(g, u, v)
    return g


# ----------------------------------------------------------------------
# commands


def _guard_default(fallback: int) -> int:
    raw = os.environ.get(MAX_SIZE_ENV)
    if raw is None:
        return fallback
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise GraphFileError(f"{MAX_SIZE_ENV} must be a positive integer, got {raw!r}")
    return value


def cmd_recognize(args) -> int:
    named = load_graphfile(args.path)
    start = time.perf_counter()
    if args.proof:
        guard = args.max_size or _guard_default(DEFAULT_VERIFY_MAX_VERTICES)
        verdict, proof = recognize_with_proof(named.graph, verify_max_size=guard)
    else:
        verdict, proof = recognize(named.graph), None
    elapsed_ms = (time.perf_counter() - start) * 1000.0

    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(emit_dot(named, verdict.embedding))
    if args.as_json:
        print(json.dumps(report_json(named, verdict, proof, elapsed_ms),
                         indent=2, sort_keys=True))
    elif verdict.mengerian:
        print("Mengerian")
        if verdict.crossed:
            print(f"  crossed structures: {len(verdict.crossed)}"
                  f" (chains examined: {verdict.chains_examined})")
    else:
        emb = verdict.embedding
        print(f"NonMengerian ({emb.pattern.name})")
        for i, v in sorted(emb.branch.items()):
            print(f"  {emb.pattern.display_name(i)} -> {named.name(v)}")
        if proof is not None:
            wj = _witness_json(named, proof)
            print(f"  witness: s={wj['s']} t={wj['t']} status={wj['status']}")
    return 0 if verdict.mengerian else 1


def _print_paths(named: NamedGraph, tg: TemporalGraph, paths) -> None:
    for i, p in enumerate(paths, start=1):
        hops = [named.name(p.vertices[0])]
        for eid, v in zip(p.edge_ids, p.vertices[1:]):
            hops.append(f"-{tg.label(eid)}-")
            hops.append(named.name(v))
        print(f"  path {i}: {' '.join(hops)}")


def cmd_menger(args) -> int:
    named = load_graphfile(args.path)
    tg = named.temporal()
    s, t = named.id(args.source), named.id(args.target)
    if args.edge:
        paths, cut = edge_menger(tg, s, t)
        print(f"p' = {len(paths)}")
        _print_paths(named, tg, paths)
        print(f"c' = {len(cut)}")
        print(f"  cut edges: {' '.join(str(e) for e in sorted(cut))}")
        return 0
    guard = args.max_size or _guard_default(DEFAULT_MAX_VERTICES)
    paths = max_disjoint_paths(tg, s, t, max_size=guard)
    try:
        cut = min_vertex_cut(tg, s, t, max_size=guard)
    except CutUndefinedError:
        raise CutUndefinedError(
            f"vertices {args.source!r} and {args.target!r} are adjacent, "
            "so no vertex cut exists; use --edge for the edge variant"
        ) from None
    print(f"p = {len(paths)}")
    _print_paths(named, tg, paths)
    print(f"c = {len(cut)}")
    print(f"  cut: {' '.join(named.name(v) for v in sorted(cut))}")
    return 0


def cmd_falsify(args) -> int:
    named = load_graphfile(args.path)
    if args.exhaustive:
        found = falsify_mengerian(named.graph, max_edges=args.max_edges)
    else:
        found = falsify_mengerian(named.graph, samples=args.samples, seed=args.seed)
    if found is None:
        print("no counterexample")
        return 0
    print("# counterexample: p < c under this labeling")
    print(f"# s = {named.name(found.s)}  t = {named.name(found.t)}"
          f"  p = {len(found.paths)}  c = {len(found.cut)}")
    print(f"# cut: {' '.join(named.name(v) for v in sorted(found.cut))}")
    sys.stdout.write(emit_graphfile(named.graph, named.names, found.labeled.times))
    return 1


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.model == "multigraph":
        if args.pattern or args.ops is not None:
            raise GraphFileError("--pattern/--ops only apply to m-subdivided-pattern")
        g = random_multigraph(args.n, args.m, args.max_mult, rng)
    else:
        if args.pattern is None:
            raise GraphFileError("m-subdivided-pattern requires --pattern")
        g = subdivided_pattern(args.pattern, args.ops or 0, rng)
    sys.stdout.write(emit_graphfile(g))
    return 0


# ----------------------------------------------------------------------
# dispatch


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mengerian",
        description="Decide whether a multigraph is Mengerian; run temporal "
                    "Menger oracles; falsify by labeling search; generate inputs.",
        epilog="Exit codes: 0 Mengerian / none found / answered, "
               "1 NonMengerian / counterexample, 2 error. "
               f"{MAX_SIZE_ENV} overrides the default oracle size guards.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("recognize", help="classify a graph file")
    r.add_argument("path")
    r.add_argument("--proof", action="store_true",
                   help="attach a counterexample labeling, oracle-checked")
    r.add_argument("--json", dest="as_json", action="store_true",
                   help="emit a JSON report")
    r.add_argument("--dot", metavar="FILE",
                   help="write a DOT drawing, embedding highlighted")
    r.add_argument("--max-size", type=_positive, metavar="N",
                   help="vertex bound for witness verification")
    r.add_argument("--threads", type=_positive, default=1, metavar="N",
                   help="reserved; execution is sequential and deterministic")
    r.set_defaults(func=cmd_recognize)

    q = sub.add_parser("menger", help="exact p/c or p'/c' for one pair")
    q.add_argument("path")
    q.add_argument("--source", required=True)
    q.add_argument("--target", required=True)
    group = q.add_mutually_exclusive_group()
    group.add_argument("--vertex", action="store_true", default=True,
                       help="internally vertex-disjoint variant (default)")
    group.add_argument("--edge", action="store_true",
                       help="multiedge-disjoint variant")
    q.add_argument("--max-size", type=_positive, metavar="N",
                   help="vertex bound for the search oracles")
    q.set_defaults(func=cmd_menger)

    f = sub.add_parser("falsify", help="search labelings for p < c")
    mode = f.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true",
                      help="every weak order of labels")
    mode.add_argument("--samples", type=_positive, metavar="N",
                      help="random labelings to try")
    f.add_argument("path")
    f.add_argument("--seed", type=_non_negative, default=0, metavar="S")
    f.add_argument("--max-edges", type=_positive,
                   default=DEFAULT_MAX_EDGES_EXHAUSTIVE, metavar="M",
                   help="edge bound for --exhaustive")
    f.set_defaults(func=cmd_falsify)

    g = sub.add_parser("gen", help="write a graph file to standard output")
    g.add_argument("--model", required=True,
                   choices=("multigraph", "m-subdivided-pattern"))
    g.add_argument("--n", type=_non_negative, default=0)
    g.add_argument("--m", type=_non_negative, default=0)
    g.add_argument("--max-mult", type=_positive, default=3)
    g.add_argument("--pattern", choices=tuple(p.name for p in PATTERNS))
    g.add_argument("--ops", type=_non_negative)
    g.add_argument("--seed", type=_non_negative, default=0)
    g.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFileError, GraphError, ResourceLimitError, CutUndefinedError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
