"""Command-line interface.

Exit codes: 0 the property holds / the object was found; 1 it does not /
none exists; 2 usage or parse error; 3 search bounds or budget exhausted
(inconclusive).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path as FsPath
from typing import Any

from .cactus import RootedPreorder, is_cactus
from .dbcp import find_dbcp, is_dbcp
from .digraph import Digraph, is_strongly_connected
from .generators import FIXTURE_NAMES, fixture, nonisomorphic_digraphs, random_cactus, random_digraph
from .io import (
    GraphParseError,
    export_dot,
    graph_document,
    morphism_document,
    parse_graph,
    parse_morphism,
    serialize_graph,
)
from .morphism import verify_expansion
from .search import SearchConfig, find_cactus_expansion, validate_theorem_on_corpus

OK, FAIL, USAGE, INCONCLUSIVE = 0, 1, 2, 3


class _Out:
    def __init__(self, fmt: str) -> None:
        self.json = fmt == "json"

    def text(self, line: str = "") -> None:
        if not self.json:
            print(line)

    def record(self, rec: dict[str, Any]) -> None:
        if self.json:
            print(json.dumps(rec, sort_keys=True))


def _read_graph(ref: str) -> Digraph:
    if ref.startswith("fixture:"):
        return fixture(ref.split(":", 1)[1]).graph
    text = sys.stdin.read() if ref == "-" else FsPath(ref).read_text(encoding="utf-8")
    return parse_graph(text)


def _arc(g: Digraph, arc: tuple[int, int]) -> str:
    return f"({g.label(arc[0])},{g.label(arc[1])})"


def _seq(g: Digraph, vs: Sequence[int]) -> str:
    return "(" + ",".join(g.label(v) for v in vs) + ")"


def _config(args: argparse.Namespace) -> SearchConfig:
    return SearchConfig(
        fiber_bound=args.fiber_bound,
        max_total_vertices=args.max_vertices,
        node_budget=args.budget,
    )


def cmd_check_sc(args, out: _Out) -> int:
    g = _read_graph(args.graph)
    sc = is_strongly_connected(g)
    out.text("strongly connected" if sc else "not strongly connected")
    out.record({"command": "check-sc", "strongly_connected": sc})
    return OK if sc else FAIL


def cmd_check_cactus(args, out: _Out) -> int:
    g = _read_graph(args.graph)
    res = is_cactus(g)
    rec: dict[str, Any] = {"command": "check-cactus", "is_cactus": bool(res)}
    if res:
        points = [g.label(v) for v in sorted(res.connecting_points)]
        n = len(res.cycles)
        out.text(f"cactus: {n} cycle{'s' if n != 1 else ''}; connecting points: {' '.join(points) or '-'}")
        for i, c in enumerate(res.cycles):
            out.text(f"  cycle {i}: {_seq(g, c.vertices)}")
        rec["cycles"] = [list(c.labels()) for c in res.cycles]
        rec["connecting_points"] = points
    else:
        out.text(f"not a cactus: {res.describe(g)}")
        rec["reason"] = res.reason
        if res.arc is not None:
            rec["arc"] = [g.label(v) for v in res.arc]
        rec["cycles"] = [list(c.labels()) for c in res.cycles]
    out.record(rec)
    return OK if res else FAIL


def _witness_text(g: Digraph, w, out: _Out) -> None:
    out.text(f"dbcp ({g.label(w.p)},{g.label(w.q)})")
    for path in (*w.forward, *w.backward):
        out.text(f"  {_seq(g, path.vertices)}")


def cmd_find_dbcp(args, out: _Out) -> int:
    g = _read_graph(args.graph)
    w = find_dbcp(g)
    if w is None:
        out.text("no dbcp")
        out.record({"command": "find-dbcp", "found": False})
        return FAIL
    _witness_text(g, w, out)
    out.record({"command": "find-dbcp", "found": True, "witness": w.to_dict(g)})
    return OK


def cmd_check_dbcp(args, out: _Out) -> int:
    g = _read_graph(args.graph)
    p, q = g.index(args.p), g.index(args.q)
    if p == q:
        raise ValueError("p and q must differ")
    w = is_dbcp(g, p, q)
    rec: dict[str, Any] = {"command": "check-dbcp", "pair": [args.p, args.q], "is_dbcp": w is not None}
    if w is None:
        out.text(f"({args.p},{args.q}) is not a dbcp")
    else:
        _witness_text(g, w, out)
        rec["witness"] = w.to_dict(g)
    out.record(rec)
    return OK if w is not None else FAIL


def cmd_verify_expansion(args, out: _Out) -> int:
    ref = FsPath(args.morphism)
    text = sys.stdin.read() if args.morphism == "-" else ref.read_text(encoding="utf-8")
    m = parse_morphism(text, ref.parent if args.morphism != "-" else ".")
    report = verify_expansion(m)
    src, tgt = m.source, m.target
    out.text(f"vertex surjective: {'yes' if report.vertex_surjective else 'no'}")
    if report.unhit_vertex is not None:
        out.text(f"  unhit vertex {tgt.label(report.unhit_vertex)}")
    out.text(f"arc surjective: {'yes' if report.arc_surjective else 'no'}")
    if report.unhit_arc is not None:
        out.text(f"  unhit arc {_arc(tgt, report.unhit_arc)}")
    out.text(f"unique lift: {'yes' if report.unique_lift else 'no'}")
    if report.lift_failure is not None:
        lf = report.lift_failure
        out.text(
            f"  arc {_arc(tgt, lf.target_arc)} has {lf.lifts} lifts into "
            f"{src.label(lf.source_vertex)}"
        )
    out.text("expansion" if report.is_expansion else "not an expansion")
    out.record({"command": "verify-expansion", **report.to_dict(m)})
    return OK if report.is_expansion else FAIL


def cmd_find_expansion(args, out: _Out) -> int:
    g = _read_graph(args.graph)
    outcome = find_cactus_expansion(g, _config(args))
    rec: dict[str, Any] = {
        "command": "find-expansion",
        "status": outcome.status.value,
        "proven_impossible": outcome.proven_impossible,
        "verdict": outcome.verdict(),
        "stats": outcome.stats.to_dict(),
    }
    out.text(outcome.verdict())
    if outcome.expansion is not None:
        m = outcome.expansion
        out.text(serialize_graph(m.source).rstrip("\n"))
        out.text("map:")
        for s, t in m.labeled_map().items():
            out.text(f"  {s} -> {t}")
        rec["expansion"] = morphism_document(m)
    stats = outcome.stats
    out.text(
        f"stats: {stats.fiber_vectors} fiber vectors, {stats.candidates} candidates, "
        f"{stats.nodes} nodes"
    )
    out.record(rec)
    if outcome.found:
        return OK
    if outcome.proven_impossible:
        return FAIL
    return INCONCLUSIVE


def cmd_preorder(args, out: _Out) -> int:
    g = _read_graph(args.graph)
    dec = is_cactus(g)
    if not dec:
        out.text(f"not a cactus: {dec.describe(g)}")
        out.record({"command": "preorder", "is_cactus": False, "reason": dec.reason})
        return FAIL
    p = RootedPreorder(dec, g.index(args.root))
    rows = []
    out.text(f"root {args.root}")
    for v in g.vertices:
        sub = sorted(p.minimal_subcactus(v))
        rows.append({"vertex": g.label(v), "subcactus": sub})
        out.text(f"  C({g.label(v)}) = {{{', '.join(map(str, sub))}}}")
    minima = {}
    for i, c in enumerate(dec.cycles):
        vs = p.cycle_minimum_point(i)
        minima[str(i)] = g.label(vs)
        out.text(f"  cycle {i} {_seq(g, c.vertices)}: minimum point {g.label(vs)}")
    out.record(
        {
            "command": "preorder",
            "is_cactus": True,
            "root": args.root,
            "cycles": [list(c.labels()) for c in dec.cycles],
            "subcactus": rows,
            "minimum_points": minima,
        }
    )
    return OK


def cmd_corpus_validate(args, out: _Out) -> int:
    if args.graphs:
        corpus = [_read_graph(ref) for ref in args.graphs]
        names = list(args.graphs)
    else:
        corpus = [g for n in range(1, args.max_n + 1) for g in nonisomorphic_digraphs(n)]
        names = [f"n{g.n}:" + ",".join(f"{x}{y}" for x, y in g.sorted_arcs) for g in corpus]
    report = validate_theorem_on_corpus(corpus, _config(args), names)
    for row in report.rows:
        out.text(
            f"{row.graph_id}\tdbcp={'yes' if row.has_dbcp else 'no'}\t"
            f"sc={'yes' if row.strongly_connected else 'no'}\t{row.outcome.verdict()}"
        )
        out.record({"command": "corpus-validate", **row.to_dict()})
    for msg in report.violations:
        print(f"VIOLATION: {msg}", file=sys.stderr)
    summary = {
        "rows": len(report.rows),
        "found": sum(r.outcome.found for r in report.rows),
        "proven_impossible": sum(r.outcome.proven_impossible for r in report.rows),
        "inconclusive": sum(
            not r.outcome.found and not r.outcome.proven_impossible for r in report.rows
        ),
        "violations": len(report.violations),
    }
    out.text(" ".join(f"{k}={v}" for k, v in summary.items()))
    out.record({"command": "corpus-validate", "summary": summary})
    return OK if report.consistent else FAIL


def cmd_gen(args, out: _Out) -> int:
    if args.kind == "digraph":
        g = random_digraph(args.n, args.p, args.seed)
    else:
        g = random_cactus(args.cycles, args.max_len, args.seed)
    out.text(serialize_graph(g).rstrip("\n"))
    out.record({"command": "gen", "graph": graph_document(g)})
    return OK


def cmd_fixture(args, out: _Out) -> int:
    fx = fixture(args.name)
    out.text(serialize_graph(fx.graph).rstrip("\n"))
    out.record(
        {"command": "fixture", "name": fx.name, "graph": graph_document(fx.graph), "expected": fx.expected}
    )
    return OK


def cmd_export_dot(args, out: _Out) -> int:
    g = _read_graph(args.graph)
    dec = None
    if args.decompose:
        res = is_cactus(g)
        if not res:
            print(f"not a cactus: {res.describe(g)}", file=sys.stderr)
            return FAIL
        dec = res
    dot = export_dot(g, dec)
    out.text(dot.rstrip("\n"))
    out.record({"command": "export-dot", "dot": dot})
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--fiber-bound", type=int, default=4)
    common.add_argument("--max-vertices", type=int, default=None, help="default: 3 * |V|")
    common.add_argument("--budget", type=int, default=50_000_000, help="search node budget")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="cactus-expansion",
        description="Digraph expansions, cactus digraphs and dbcp detection.",
        epilog="Graph arguments are files (edge list or JSON), '-' for stdin, or fixture:NAME.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    add("check-sc", cmd_check_sc, "strong connectivity").add_argument("graph")
    add("check-cactus", cmd_check_cactus, "cactus recognition").add_argument("graph")
    add("find-dbcp", cmd_find_dbcp, "first dbcp with witness paths").add_argument("graph")
    p = add("check-dbcp", cmd_check_dbcp, "test one vertex pair")
    p.add_argument("graph")
    p.add_argument("p")
    p.add_argument("q")
    add("verify-expansion", cmd_verify_expansion, "check a morphism document").add_argument(
        "morphism"
    )
    add("find-expansion", cmd_find_expansion, "search for a cactus expansion").add_argument(
        "graph"
    )
    p = add("preorder", cmd_preorder, "rooted preorder of a cactus")
    p.add_argument("graph")
    p.add_argument("--root", required=True)
    p = add("corpus-validate", cmd_corpus_validate, "dbcp vs. expansion search over a corpus")
    p.add_argument("graphs", nargs="*")
    p.add_argument("--max-n", type=int, default=3, help="all digraphs up to this size")
    p = add("gen", cmd_gen, "random digraph or cactus")
    p.add_argument("kind", choices=("digraph", "cactus"))
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--p", type=float, default=0.4)
    p.add_argument("--cycles", type=int, default=3)
    p.add_argument("--max-len", type=int, default=4)
    add("fixture", cmd_fixture, "print a named fixture").add_argument("name", choices=FIXTURE_NAMES)
    p = add("export-dot", cmd_export_dot, "Graphviz DOT output")
    p.add_argument("graph")
    p.add_argument("--decompose", action="store_true", help="colour arcs by cactus cycle")
    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, _Out(args.format))
    except (GraphParseError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run_cli())
