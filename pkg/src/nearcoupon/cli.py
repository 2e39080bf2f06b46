"""Command-line interface.

Exit status: 0 success, 1 verification failure (or a property that does not
hold), 2 input error, 3 four-colouring search timeout.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import generators, io, kernels, oracle, pipeline, reduction
from .embedding import validate
from .errors import FourColoringTimeout, InputError, NearCouponError, PartialColoring, TooLarge
from .fair import DEFAULT_NODE_BUDGET
from .timing import PhaseTimer

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_TIMEOUT = 0, 1, 2, 3

PIPELINE_KEYS = ("special", "I", "gprime", "protected", "deleted")
FAIR_KEYS = ("cut", "cut_moves", "side_graphs", "colors4")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj) + "\n"


def _parse_special(arg: str | None, g) -> list[int]:
    twos = [v for v in g.vertices() if g.degree(v) == 2]
    if arg is None:
        if twos:
            raise InputError(
                f"graph has 2-vertices {twos[:5]}; pass --special v1,v2, --special auto or --special none"
            )
        return []
    if arg == "none":
        return []
    if arg == "auto":
        return twos[:2]
    try:
        return [int(x) for x in arg.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--special expects comma-separated vertex ids, got {arg!r}") from None


def cmd_validate(args) -> int:
    g = io.read_graph(args.graph)
    rep = validate(g)
    sys.stdout.write(_json(rep.as_dict()))
    return EXIT_OK if rep.is_near_triangulation else EXIT_FAIL


def cmd_solve(args) -> int:
    g = io.read_graph(args.graph)
    special = _parse_special(args.special, g)
    want_dumps = bool(args.dump_pipeline or args.dump_fair)
    audit = pipeline.PipelineAudit(keep_dumps=want_dumps) if want_dumps else None
    f = reduction.solve(g, special, audit=audit, node_budget=args.node_budget)
    if args.dump_pipeline:
        items = [{k: d[k] for k in PIPELINE_KEYS} for d in audit.dumps]
        Path(args.dump_pipeline).write_text(_json({"instances": items}))
    if args.dump_fair:
        items = [{k: d[k] for k in FAIR_KEYS} for d in audit.dumps]
        Path(args.dump_fair).write_text(_json({"instances": items}))
    _emit(io.dumps_coloring(f, special), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = io.read_graph(args.graph)
    f, special = io.read_coloring(args.coloring)
    if args.special is not None:
        special = _parse_special(args.special, g)
    if args.targets == "all":
        targets = set(g.vertices())
    else:
        special = reduction.special_set(g, special or [])
        targets = oracle.theorem_targets(g, special)
    try:
        rep = oracle.check_coupon(g, targets, f)
    except PartialColoring as exc:
        raise InputError(str(exc)) from exc
    sys.stdout.write(_json({"satisfied": rep.satisfied, "violated": [list(x) for x in rep.violated]}))
    return EXIT_OK if rep.satisfied else EXIT_FAIL


def cmd_oracle(args) -> int:
    g = io.read_graph(args.graph)
    if args.mode == "two-coloring":
        if args.targets == "all":
            targets = set(g.vertices())
        else:
            targets = oracle.theorem_targets(g, reduction.special_set(g, _parse_special(args.special or "none", g)))
        f = oracle.exhaustive_two_coloring(g, targets, limit=args.limit or oracle.TWO_COLORING_LIMIT)
        if f is None:
            sys.stdout.write(_json({"result": "UNSAT"}))
            return EXIT_FAIL
        sys.stdout.write(_json({"result": "SAT", **io.coloring_to_obj(f)}))
        return EXIT_OK
    if args.mode == "tds":
        ok = oracle.has_k_disjoint_tds(g, args.k, limit=args.limit)
        sys.stdout.write(_json({"k": args.k, "has_k_disjoint_tds": ok}))
        return EXIT_OK if ok else EXIT_FAIL
    f4 = oracle.search_min_d3_coloring(g, limit=args.limit or oracle.MIN_D3_LIMIT)
    if f4 is None:
        sys.stderr.write("no 4-colouring where every vertex sees min(d, 3) colours: counterexample found\n")
        sys.stdout.write(_json({"result": "UNSAT"}))
        return EXIT_FAIL
    sys.stdout.write(_json({"result": "SAT", **io.four_coloring_to_obj(f4)}))
    return EXIT_OK


def cmd_generate(args) -> int:
    g = generators.GenSpec(args.family, args.n, args.seed, args.dmin).build()
    _emit(io.dumps_graph(g), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    timer = PhaseTimer()
    audit = pipeline.PipelineAudit()
    t0 = time.perf_counter()
    gen = 0.0
    for i in range(args.count):
        g0 = time.perf_counter()
        g = generators.GenSpec(args.family, args.n, args.seed + i, args.dmin).build()
        gen += time.perf_counter() - g0
        special = [v for v in g.vertices() if g.degree(v) == 2][:2]
        reduction.solve(g, special, timer=timer, audit=audit, node_budget=args.node_budget)
    report = {
        "count": args.count,
        "family": args.family,
        "n": args.n,
        "seed": args.seed,
        "backend": kernels.BACKEND,
        "generate_seconds": round(gen, 6),
        "solve_seconds": round(time.perf_counter() - t0 - gen, 6),
        "phases": timer.as_dict(),
        "irreducible_instances": audit.instances,
        "four_color_calls": audit.stats.calls,
        "max_four_color_nodes": audit.stats.max_nodes,
        "invariant_violations": len(audit.violations),
    }
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK if not audit.violations else EXIT_FAIL


def cmd_export_dot(args) -> int:
    g = io.read_graph(args.graph)
    colors = None
    protected = []
    if args.coloring:
        obj = io._load(args.coloring)
        if not isinstance(obj, dict):
            raise InputError(f"{args.coloring}: top level must be an object")
        if "colors4" in obj:
            colors = {int(k): int(c) for k, c in obj["colors4"].items()}
        elif "colors" in obj:
            colors, _ = io.read_coloring(args.coloring)
        protected = [tuple(e) for e in obj.get("protected", [])]
    _emit(io.to_dot(g, colors, protected), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nearcoupon", description="Two-colourings of planar near-triangulations in which every vertex of degree >= 3 sees both colours.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a graph file and report its class")
    s.add_argument("graph")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("solve", help="compute a good two-colouring")
    s.add_argument("graph")
    s.add_argument("--special", help="v1,v2 | auto (two lowest-id 2-vertices) | none")
    s.add_argument("--dump-pipeline", metavar="FILE", help="write contracted graphs and protected edges as JSON")
    s.add_argument("--dump-fair", metavar="FILE", help="write cuts, side graphs and four-colourings as JSON")
    s.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="check a colouring against a graph")
    s.add_argument("graph")
    s.add_argument("coloring")
    s.add_argument("--targets", choices=("all", "theorem"), default="theorem")
    s.add_argument("--special", help="override the special set stored in the colouring file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="exhaustive searches on small graphs")
    s.add_argument("graph")
    s.add_argument("--mode", choices=("two-coloring", "tds", "min-d3"), required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--targets", choices=("all", "theorem"), default="theorem")
    s.add_argument("--special")
    s.add_argument("--limit", type=int, help="override the vertex-count cap")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("generate", help="emit a graph file")
    s.add_argument("--family", required=True, help=", ".join(generators.FAMILIES + ("triangulation", "near-triangulation")))
    s.add_argument("--n", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--dmin", type=int, default=3)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("bench", help="solve a batch of generated instances and report phase timings")
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--n", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--family", default="near-triangulation")
    s.add_argument("--dmin", type=int, default=3)
    s.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("export-dot", help="render a graph (and optional colouring) as Graphviz DOT")
    s.add_argument("graph")
    s.add_argument("coloring", nargs="?")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "node_budget", 1) <= 0:
            raise InputError("--node-budget must be positive")
        return args.func(args)
    except FourColoringTimeout as exc:
        sys.stderr.write(f"timeout: {exc}\n")
        return EXIT_TIMEOUT
    except (InputError, TooLarge) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except NearCouponError as exc:
        sys.stderr.write(f"failed: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
