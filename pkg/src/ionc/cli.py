"""Command-line interface.

Exit codes (stable, scripts may branch on them):

    0  search complete, at least one solution
    2  bad input (unreadable or invalid file, bad flags)
    3  unsatisfiable: the inputs admit no DAG
    4  stopped at the solution cap
    5  timed out (the partial solutions written are all valid)
    6  the oracle refused: universe larger than its node limit
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__, _kernel
from .asp import EmitMode, emit_program
from .io import (
    FileFormatError,
    read_graph,
    read_instance,
    read_solutions,
    solutions_to_dict,
    write_json,
)
from .oracle import DEFAULT_MAX_NODES, OracleLimitError, brute_force_solve
from .solver import SolverConfig, Status, solve
from .stats import THRESHOLDS, edge_frequencies, prop_accurate, prop_same
from .sweep import grid, run_sweep, to_csv
from .synth import RNG_ALGORITHM

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNSAT = 3
EXIT_CAPPED = 4
EXIT_TIMEOUT = 5
EXIT_REFUSED = 6

STATUS_EXIT = {
    Status.COMPLETE: EXIT_OK,
    Status.UNSATISFIABLE: EXIT_UNSAT,
    Status.CAPPED: EXIT_CAPPED,
    Status.TIMED_OUT: EXIT_TIMEOUT,
}

log = logging.getLogger("ionc")


class InputError(Exception):
    pass


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text):
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text: str, out):
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_instance(path):
    try:
        return read_instance(path)
    except (OSError, FileFormatError) as exc:
        raise InputError(str(exc)) from None


def cmd_solve(args) -> int:
    inst = _read_instance(args.instance)
    cfg = SolverConfig(max_solutions=args.cap, timeout=args.timeout, workers=args.workers)
    sols = solve(inst, cfg)
    _emit(write_json(solutions_to_dict(sols, inst.universe, timing=not args.no_timing)), args.out)
    log.info("%d solutions, status %s, %.3fs", len(sols), sols.status.value, sols.elapsed)
    return STATUS_EXIT[sols.status]


def cmd_oracle(args) -> int:
    inst = _read_instance(args.instance)
    try:
        sols = brute_force_solve(inst, max_nodes=args.max_nodes)
    except OracleLimitError as exc:
        print(f"ionc oracle: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    _emit(write_json(solutions_to_dict(sols, inst.universe, timing=not args.no_timing)), args.out)
    return STATUS_EXIT[sols.status]


def cmd_emit_asp(args) -> int:
    inst = _read_instance(args.instance)
    mode = EmitMode.STRICT_LISTING if args.strict_listing else EmitMode.AUGMENTED
    _emit(emit_program(inst, mode), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    cells = grid(args.nodes, args.degree, args.overlap, args.subgraphs, args.seed, args.reps)
    cfg = SolverConfig(max_solutions=args.cap, timeout=args.timeout, workers=1)
    rows = run_sweep(cells, cfg, workers=args.workers, check_truth=args.check_truth)
    for r in rows:
        if r.error:
            log.warning("cell %s rep %d failed: %s", r.params, r.rep, r.error)
    text = to_csv(rows, timing=not args.no_timing, check_truth=args.check_truth, summary=not args.no_summary)
    _emit(text, args.out)
    if args.out and args.out != "-":
        meta = {
            "rng": RNG_ALGORITHM,
            "kernel": _kernel.BACKEND,
            "version": __version__,
            "seed": args.seed,
            "reps": args.reps,
            "timeout": args.timeout,
            "cap": args.cap,
        }
        Path(str(args.out) + ".meta.json").write_text(json.dumps(meta, indent=1) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        universe, sols = read_solutions(args.solutions)
        truth = None
        if args.truth:
            tu, truth = read_graph(args.truth)
            if tu.names != universe.names:
                raise FileFormatError("ground truth variables do not match the solution file")
    except (OSError, FileFormatError) as exc:
        raise InputError(str(exc)) from None
    names = universe.names
    print(f"# {len(sols)} solutions, status {sols.status.value}")
    if not len(sols):
        return EXIT_OK
    print("from\tto\tfrequency")
    for (a, b), f in edge_frequencies(sols).items():
        print(f"{names[a]}\t{names[b]}\t{f:.6f}")
    for t in THRESHOLDS:
        tag = int(round(t * 100))
        line = f"s{tag}\t{prop_same(sols, t):.6f}"
        if truth is not None:
            line += f"\ta{tag}\t{prop_accurate(sols, truth, t):.6f}"
        print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ionc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({_kernel.BACKEND} kernel)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="enumerate all DAGs consistent with an instance file")
    s.add_argument("instance")
    s.add_argument("--cap", type=int, default=1_000_000, help="max solutions, 0 = unlimited")
    s.add_argument("--timeout", type=float, default=300.0, help="seconds, 0 = none")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", help="solutions file (default stdout)")
    s.add_argument("--no-timing", action="store_true", help="omit elapsed/explored for reproducible output")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="brute-force solution set for small instances")
    o.add_argument("instance")
    o.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    o.add_argument("--out")
    o.add_argument("--no-timing", action="store_true")
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("emit-asp", help="print the instance as an ASP program")
    e.add_argument("instance")
    e.add_argument("--strict-listing", action="store_true",
                   help="omit the two constraints that bind input bidirected facts")
    e.add_argument("--out")
    e.set_defaults(func=cmd_emit_asp)

    m = sub.add_parser("simulate", help="synthetic benchmark sweep, CSV output")
    m.add_argument("--nodes", type=_ints, default=[8])
    m.add_argument("--degree", type=_floats, default=[0.25])
    m.add_argument("--overlap", type=_floats, default=[0.5])
    m.add_argument("--subgraphs", type=_ints, default=[2])
    m.add_argument("--reps", type=int, default=100)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--timeout", type=float, default=300.0)
    m.add_argument("--cap", type=int, default=1_000_000)
    m.add_argument("--workers", type=int, default=1, help="parallel replicates")
    m.add_argument("--out")
    m.add_argument("--check-truth", action="store_true",
                   help="add a truth_member column (ground truth found in the solution set)")
    m.add_argument("--no-timing", action="store_true", help="leave runtime cells empty")
    m.add_argument("--no-summary", action="store_true", help="omit per-cell summary rows")
    m.set_defaults(func=cmd_simulate)

    r = sub.add_parser("report", help="edge frequencies and agreement statistics")
    r.add_argument("solutions")
    r.add_argument("--truth", help="ground-truth graph file")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="ionc: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"ionc {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"ionc {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
