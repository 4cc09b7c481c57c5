"""Command-line front end: generate graphs, run colorers, check colorings,
query the brute-force oracles, and collect shattering statistics.

Exit codes: 0 valid output, 1 verification or algorithm failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .brooks import complete_one_uncolored, completion_radius
from .detcolor import color_det_netcomp, color_det_rulingforest
from .engine import RunReport, node_stream
from .errors import DeltaColorError, RoundLimitExceeded
from .graph import is_nice
from .oracle import oracle_degree_choosable, oracle_delta_coloring, verify
from .randcolor import make_params, run_randomized, shattering_stats
from .workbench import (
    generate,
    load_coloring,
    load_graph,
    save_coloring,
    save_graph,
    write_report,
)

USAGE_ERROR = 2
FAILURE = 1


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        for piece in item.split(","):
            if not piece:
                continue
            if "=" not in piece:
                raise DeltaColorError(f"--param expects key=value, got {piece!r}")
            key, value = piece.split("=", 1)
            out[key.strip()] = float(value) if "." in value else int(value)
    return out


def _cmd_gen(args) -> int:
    params = {}
    for key in ("n", "d", "w", "h", "g_min", "blocks", "max_clique"):
        value = getattr(args, key.replace("g_min", "gmin"), None)
        if value is not None:
            params[key] = value
    g = generate(args.family.replace("-", "_"), args.seed, **params)
    save_graph(g, args.out)
    print(f"wrote {args.out}: n={g.n} m={g.m} delta={g.max_degree()}")
    return 0


def _run_brooks(g, seed: int):
    """Self-contained completion demo: brute-force coloring, uncolor one
    seeded random node, complete it locally."""
    colors = oracle_delta_coloring(g, g.max_degree(), cap=max(64, g.n))
    if colors is None:
        raise DeltaColorError("graph admits no max-degree coloring (not nice?)")
    victim = node_stream(seed, 0, 0, b"brooks-victim").randrange(g.n)
    partial = list(colors)
    partial[victim] = None
    result = complete_one_uncolored(g, partial)
    report = RunReport(
        algorithm="brooks", seed=seed, n=g.n, delta=g.max_degree()
    )
    report.add_phase("completion", 2 * completion_radius(g.n, g.max_degree()) + 1)
    report.valid = bool(verify(g, result.colors, g.max_degree()))
    return result.colors, report


def _cmd_run(args) -> int:
    g = load_graph(args.graph)
    overrides = _parse_params(args.param)
    t0 = time.perf_counter()
    if args.algo == "det":
        out = color_det_rulingforest(g, args.seed)
        colors, report = out.colors, out.report
    elif args.algo == "netcomp":
        out = color_det_netcomp(g, args.seed)
        colors, report = out.colors, out.report
    elif args.algo == "rand":
        out = run_randomized(g, "largeDelta", args.seed, overrides)
        colors, report = out.colors, out.report
    elif args.algo == "rand-small":
        out = run_randomized(g, "smallDelta", args.seed, overrides)
        colors, report = out.colors, out.report
    elif args.algo == "brooks":
        colors, report = _run_brooks(g, args.seed)
    else:
        raise DeltaColorError(f"unknown algorithm {args.algo!r}")
    report.wall_ms = (time.perf_counter() - t0) * 1000.0
    if args.max_rounds is not None and report.total_rounds > args.max_rounds:
        raise RoundLimitExceeded(
            f"run used {report.total_rounds} rounds > limit {args.max_rounds}"
        )
    if args.out:
        save_coloring(colors, args.out)
    if args.report:
        write_report(report, args.report)
    print(
        f"{report.algorithm}: n={report.n} delta={report.delta} "
        f"rounds={report.total_rounds} valid={report.valid}",
        file=sys.stderr,
    )
    print(f"wall_ms={report.wall_ms:.1f}", file=sys.stderr)
    if args.validate:
        verdict = verify(g, colors, g.max_degree())
        if not verdict:
            print(f"INVALID: {verdict.message}", file=sys.stderr)
            return FAILURE
    return 0


def _cmd_check(args) -> int:
    g = load_graph(args.graph)
    colors = load_coloring(args.coloring, g.n)
    palette = args.colors if args.colors is not None else g.max_degree()
    verdict = verify(g, colors, palette)
    print("ok" if verdict else f"violation: {verdict.message}")
    return 0 if verdict else FAILURE


def _cmd_oracle(args) -> int:
    g = load_graph(args.graph)
    if args.mode == "choosable":
        print("true" if oracle_degree_choosable(g, args.universe) else "false")
        return 0
    k = args.colors if args.colors is not None else g.max_degree()
    coloring = oracle_delta_coloring(g, k, cap=max(24, g.n if g.n <= args.cap else 0))
    if coloring is None:
        print("none")
        return FAILURE
    print(" ".join(str(c) for c in coloring))
    return 0


def _cmd_stats(args) -> int:
    g = load_graph(args.graph)
    overrides = _parse_params(args.param)
    variant = "largeDelta" if args.variant == "large" else "smallDelta"
    params = make_params(g.max_degree(), g.n, variant, overrides)
    if args.seeds:
        seeds = [int(s) for s in args.seeds.split(",")]
    else:
        seeds = [args.seed + i for i in range(args.num_seeds)]
    rows = shattering_stats(g, params.marking, seeds, variant=variant)
    payload = json.dumps(rows, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(payload)
    else:
        print(payload, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltacolor",
        description="Distributed max-degree coloring: simulators, oracles, statistics.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph file")
    gen.add_argument("--family", required=True,
                     choices=["path", "cycle", "regular", "torus", "gallai",
                              "clique-minus-edge", "high-girth"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--d", type=int)
    gen.add_argument("--w", type=int)
    gen.add_argument("--h", type=int)
    gen.add_argument("--gmin", type=int)
    gen.add_argument("--blocks", type=int)
    gen.add_argument("--max-clique", dest="max_clique", type=int)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_cmd_gen)

    run = sub.add_parser("run", help="run a coloring algorithm")
    run.add_argument("--algo", required=True,
                     choices=["brooks", "det", "netcomp", "rand", "rand-small"])
    run.add_argument("--graph", required=True)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out")
    run.add_argument("--report")
    run.add_argument("--validate", action="store_true")
    run.add_argument("--max-rounds", dest="max_rounds", type=int)
    run.add_argument("--param", action="append",
                     help="key=value override (r, b, p, N, r_small, ...); repeatable")
    run.set_defaults(func=_cmd_run)

    check = sub.add_parser("check", help="verify a coloring file")
    check.add_argument("--graph", required=True)
    check.add_argument("--coloring", required=True)
    check.add_argument("--colors", type=int)
    check.set_defaults(func=_cmd_check)

    orc = sub.add_parser("oracle", help="brute-force queries on small graphs")
    orc.add_argument("--mode", required=True, choices=["choosable", "color"])
    orc.add_argument("--graph", required=True)
    orc.add_argument("--colors", type=int)
    orc.add_argument("--universe", type=int, default=6)
    orc.add_argument("--cap", type=int, default=64)
    orc.set_defaults(func=_cmd_oracle)

    stats = sub.add_parser("stats", help="shattering statistics over seeds")
    stats.add_argument("--graph", required=True)
    stats.add_argument("--variant", choices=["large", "small"], default="large")
    stats.add_argument("--seeds", help="comma-separated explicit seed list")
    stats.add_argument("--seed", type=int, default=0)
    stats.add_argument("--num-seeds", dest="num_seeds", type=int, default=10)
    stats.add_argument("--param", action="append")
    stats.add_argument("--out")
    stats.set_defaults(func=_cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except DeltaColorError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILURE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
