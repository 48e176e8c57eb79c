"""Command-line entry point: ``wlpack gen|wl|lp|pack|exp``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import graph as gr
from .errors import InvalidParameterError, WLPackError
from .graphio import read_graph, serialize_graph, to_dot, write_graph
from .harness import HarnessConfig, exit_code, run_all, run_experiment, with_overrides
from .lp import OPTIMAL, format_fraction, parse_lp, solve
from .packing import frac_matching, integral_packing
from .patterns import NAMED_PATTERNS, named_pattern, packing_system
from .wl import wl_refine


def _generate(family: str, params: list[int]) -> gr.Graph:
    simple = {
        "cycle": gr.make_cycle, "path": gr.make_path, "complete": gr.make_complete,
        "complete_bipartite": gr.make_complete_bipartite, "paley": gr.make_paley,
        "shrikhande": gr.make_shrikhande, "rook4": gr.make_rook4,
        "matched_cliques": gr.make_matched_cliques,
    }
    if family in simple:
        return simple[family](*params)
    if family == "circulant":
        if not params:
            raise InvalidParameterError("circulant needs n followed by the connection set")
        return gr.make_circulant(params[0], params[1:])
    raise InvalidParameterError(f"unknown family {family!r}")


def _graph_arg(spec: str) -> gr.Graph:
    """A file path, or a family spec like ``cycle:6`` / ``shrikhande``."""
    if Path(spec).is_file():
        return read_graph(spec)
    family, _, rest = spec.partition(":")
    params = [int(x) for x in rest.split(",") if x.strip()] if rest else []
    return _generate(family, params)


def cmd_gen(args) -> int:
    g = _generate(args.family, args.params)
    if args.dot:
        text = to_dot(g)
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    elif args.output:
        write_graph(g, args.output)
    else:
        sys.stdout.write(serialize_graph(g))
    return 0


def cmd_wl(args) -> int:
    g, h = _graph_arg(args.graph1), _graph_arg(args.graph2)
    if g.n != h.n:
        print("DISTINGUISHED")
        print(f"vertex counts differ: {g.n} vs {h.n}")
        return 1
    coloring = wl_refine(g, h, args.k, args.max_tuples)
    same = coloring.equivalent()
    print("EQUIVALENT" if same else "DISTINGUISHED")
    print(f"rounds: {coloring.rounds_used}")
    print(f"palette sizes: {len(coloring.palette(0))} {len(coloring.palette(1))}")
    return 0 if same else 1


def cmd_lp(args) -> int:
    lp = parse_lp(Path(args.file).read_text())
    res = solve(lp, args.max_variables)
    if res.status != OPTIMAL:
        print(res.status)
        return 1
    print(format_fraction(res.value))
    if args.solution:
        print("x: " + " ".join(format_fraction(v) for v in res.solution))
        print("y: " + " ".join(format_fraction(v) for v in res.dual))
    return 0


def cmd_pack(args) -> int:
    pattern = (named_pattern(args.pattern) if args.pattern in NAMED_PATTERNS
               else read_graph(args.pattern))
    host = _graph_arg(args.host)
    S = packing_system(pattern, host, args.mode)
    if args.integral:
        sol = integral_packing(S, args.node_limit)
        out = {"value_num": sol.value, "value_den": 1, "witness": list(sol.witness)}
    else:
        v = frac_matching(S)
        out = {"value_num": v.numerator, "value_den": v.denominator, "witness": None}
    print(json.dumps(out))
    return 0


def cmd_exp(args) -> int:
    cfg = HarnessConfig.load(args.config) if args.config else HarnessConfig()
    cfg = with_overrides(cfg, output_dir=args.out)
    if args.target == "all":
        reports = run_all(cfg)
    else:
        reports = [run_experiment(args.target, cfg, write=True)]
    for r in reports:
        tag = r.status.upper()
        extra = f"  ({r.reason})" if r.reason else ""
        print(f"{tag:8s} {r.run_name}  {r.runtime_ms} ms{extra}")
    return exit_code(reports)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wlpack", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="emit a named graph")
    g.add_argument("family")
    g.add_argument("params", nargs="*", type=int)
    g.add_argument("-o", "--output")
    g.add_argument("--dot", action="store_true", help="write Graphviz DOT instead")
    g.set_defaults(func=cmd_gen)

    w = sub.add_parser("wl", help="test WL-k equivalence of two graphs")
    w.add_argument("graph1", help="file or family spec such as cycle:6")
    w.add_argument("graph2")
    w.add_argument("-k", type=int, default=1)
    w.add_argument("--max-tuples", type=int, default=2 ** 26)
    w.set_defaults(func=cmd_wl)

    lp = sub.add_parser("lp", help="solve an LP file exactly")
    lp.add_argument("file")
    lp.add_argument("--solution", action="store_true", help="also print primal and dual")
    lp.add_argument("--max-variables", type=int, default=5000)
    lp.set_defaults(func=cmd_lp)

    pk = sub.add_parser("pack", help="F-packing number of a host graph")
    pk.add_argument("pattern", help=f"one of {', '.join(NAMED_PATTERNS)} or a graph file")
    pk.add_argument("host", help="file or family spec")
    pk.add_argument("--mode", choices=["vertex", "edge"], default="vertex")
    pk.add_argument("--integral", action="store_true")
    pk.add_argument("--node-limit", type=int, default=200_000)
    pk.set_defaults(func=cmd_pack)

    e = sub.add_parser("exp", help="run registered experiments")
    e.add_argument("action", choices=["run"])
    e.add_argument("target", help="experiment id or 'all'")
    e.add_argument("--config")
    e.add_argument("--out")
    e.set_defaults(func=cmd_exp)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WLPackError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
