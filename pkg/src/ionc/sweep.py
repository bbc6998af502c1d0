"""Benchmark sweeps: generate -> project -> solve -> statistics, one row per
(parameterization, replicate), written as CSV."""
from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .solver import SolverConfig, solve
from .stats import CSV_COLUMNS, RunStats, Summary, aggregate, run_stats
from .synth import SimParams, make_case, rep_rng


@dataclass
class RunRow:
    params: SimParams
    rep: int
    stats: RunStats
    truth_member: bool | None = None
    error: str | None = None


def run_rep(params: SimParams, rep: int, cfg: SolverConfig, check_truth: bool = False) -> RunRow:
    """One replicate.  Failures are captured on the row rather than raised."""
    try:
        case = make_case(params, rep_rng(params.seed, rep))
        sols = solve(case.instance, cfg)
        member = None
        if check_truth:
            member = tuple(case.ground_truth.rows) in sols.graph_set()
        return RunRow(params, rep, run_stats(sols, case.ground_truth), member)
    except Exception as exc:  # noqa: BLE001 - a sweep never aborts on one case
        return RunRow(params, rep, RunStats("error", 0, math.nan), None, f"{type(exc).__name__}: {exc}")


def _task(args):
    return run_rep(*args)


def grid(nodes, degrees, overlaps, subgraphs, seed=0, reps=1) -> list[SimParams]:
    return [
        SimParams(n, d, o, s, seed, reps)
        for n, d, o, s in itertools.product(nodes, degrees, overlaps, subgraphs)
    ]


def run_sweep(cells: list[SimParams], cfg: SolverConfig, workers: int = 1, check_truth: bool = False) -> list[RunRow]:
    """Rows in (cell, rep) order regardless of which worker finished first."""
    tasks = [(p, rep, cfg, check_truth) for p in cells for rep in range(p.reps)]
    if workers <= 1:
        return [_task(t) for t in tasks]
    with ProcessPoolExecutor(workers) as ex:
        return list(ex.map(_task, tasks, chunksize=1))


def _fmt(x, digits=6):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, float):
        return f"{x:.{digits}f}"
    return str(x)


def _status(s):
    return getattr(s, "value", s)


def summarize(rows: list[RunRow]) -> list[tuple[SimParams, Summary]]:
    cells: dict = {}
    for r in rows:
        cells.setdefault(r.params, []).append(r.stats)
    return [(p, aggregate(stats, p)) for p, stats in cells.items()]


def to_csv(rows: list[RunRow], timing: bool = True, check_truth: bool = False, summary: bool = True) -> str:
    """CSV text; ``timing=False`` leaves runtime cells empty so output is reproducible
    byte for byte."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = list(CSV_COLUMNS) + (["truth_member"] if check_truth else [])
    w.writerow(header)
    for r in rows:
        p, st = r.params, r.stats
        line = [
            p.n_nodes, p.p_degree, p.p_overlap, p.s, r.rep, _status(st.status),
            _fmt(st.runtime) if timing else "", st.n_solutions,
            _fmt(st.s75), _fmt(st.a75), _fmt(st.s90), _fmt(st.a90), _fmt(st.s100),
        ]
        if check_truth:
            line.append("" if r.truth_member is None else str(r.truth_member).lower())
        w.writerow(line)
    if summary:
        for p, sm in summarize(rows):
            label = "suppressed" if sm.suppressed else "reported"
            line = [
                p.n_nodes, p.p_degree, p.p_overlap, p.s, "summary", f"{label} {sm.n_completed}/{sm.n_runs}",
                _fmt(sm.median_runtime) if timing else "", _fmt(sm.median_solutions, 1),
                _fmt(sm.s75), _fmt(sm.a75), _fmt(sm.s90), _fmt(sm.a90), _fmt(sm.s100),
            ]
            if check_truth:
                line.append("")
            w.writerow(line)
    return buf.getvalue()
