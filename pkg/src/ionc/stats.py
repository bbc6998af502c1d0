"""Agreement and accuracy statistics over solution sets, edge frequencies, and
per-parameterization aggregation of benchmark runs.

Pair status is adjacency-based: a solution either has an edge between two
variables (in either direction) or it does not.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Dag
from .solver import SolutionSet, Status

THRESHOLDS = (0.75, 0.90, 1.00)
MIN_COMPLETION = Fraction(95, 100)

CSV_COLUMNS = (
    "n_nodes", "p_degree", "p_overlap", "s", "rep", "status",
    "runtime_s", "n_solutions", "s75", "a75", "s90", "a90", "s100",
)


def _edge_counts(sols: SolutionSet) -> np.ndarray:
    """``counts[i, j]`` = number of solutions containing ``i -> j``."""
    if len(sols) == 0:
        raise ValueError("statistics need a non-empty solution set")
    n = sols.n
    rows = sols.rows
    counts = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        counts[:, j] = ((rows >> np.uint64(j)) & np.uint64(1)).sum(axis=0)
    return counts


def _check_threshold(threshold) -> Fraction:
    t = Fraction(str(threshold))
    if not Fraction(1, 2) < t <= 1:
        raise ValueError("threshold must lie in (0.5, 1]")
    return t


def _modal(sols: SolutionSet, threshold):
    """Per unordered pair: (pair, modal adjacency, passes threshold)."""
    t = _check_threshold(threshold)
    counts = _edge_counts(sols)
    m = len(sols)
    out = []
    for i in range(sols.n):
        for j in range(i + 1, sols.n):
            adj = int(counts[i, j] + counts[j, i])
            top = max(adj, m - adj)
            out.append(((i, j), adj > m - adj, top >= t * m))
    return out


def prop_same(sols: SolutionSet, threshold: float) -> float:
    """Fraction of unordered pairs whose modal status (adjacent / not) is shared
    by at least ``threshold`` of the solutions."""
    pairs = _modal(sols, threshold)
    if not pairs:
        return math.nan
    return sum(ok for _, _, ok in pairs) / len(pairs)


def prop_accurate(sols: SolutionSet, ground_truth: Dag, threshold: float) -> float:
    """Among pairs counted by :func:`prop_same`, the fraction whose modal status
    matches the ground truth's adjacency.  NaN when no pair is counted."""
    if ground_truth.n != sols.n:
        raise ValueError("ground truth and solutions have different node counts")
    kept = [(p, adj) for p, adj, ok in _modal(sols, threshold) if ok]
    if not kept:
        return math.nan
    return sum(adj == ground_truth.adjacent(*p) for p, adj in kept) / len(kept)


def edge_frequencies(sols: SolutionSet) -> dict[tuple[int, int], float]:
    """Fraction of solutions containing each ordered edge (all off-diagonal pairs)."""
    counts = _edge_counts(sols)
    m = len(sols)
    n = sols.n
    return {(i, j): counts[i, j] / m for i in range(n) for j in range(n) if i != j}


@dataclass
class RunStats:
    status: Status
    n_solutions: int
    runtime: float
    s75: float = math.nan
    s90: float = math.nan
    s100: float = math.nan
    a75: float = math.nan
    a90: float = math.nan
    a100: float = math.nan

    @property
    def completed(self) -> bool:
        return self.status in (Status.COMPLETE, Status.UNSATISFIABLE)


def run_stats(sols: SolutionSet, ground_truth: Dag | None = None) -> RunStats:
    """Statistics for one solve; agreement values only for complete, non-empty sets."""
    rs = RunStats(sols.status, len(sols), sols.elapsed)
    if sols.status is not Status.COMPLETE or len(sols) == 0:
        return rs
    rs.s75, rs.s90, rs.s100 = (prop_same(sols, t) for t in THRESHOLDS)
    if ground_truth is not None:
        rs.a75, rs.a90, rs.a100 = (prop_accurate(sols, ground_truth, t) for t in THRESHOLDS)
    return rs


@dataclass
class Summary:
    n_runs: int
    n_completed: int
    suppressed: bool
    median_runtime: float = math.nan
    median_solutions: float = math.nan
    s75: float = math.nan
    s90: float = math.nan
    s100: float = math.nan
    a75: float = math.nan
    a90: float = math.nan


def _nanmean(values):
    vals = [v for v in values if not math.isnan(v)]
    return sum(vals) / len(vals) if vals else math.nan


def aggregate(rows: list[RunStats], params=None) -> Summary:
    """Medians of runtime and solution count, means of the agreement statistics,
    all over completed runs; suppressed when fewer than 95% of runs completed.

    ``params`` is accepted for symmetry with the CSV writer and is not used.
    """
    done = [r for r in rows if r.completed]
    summary = Summary(len(rows), len(done), Fraction(len(done), max(len(rows), 1)) < MIN_COMPLETION)
    if summary.suppressed or not done:
        summary.suppressed = True
        return summary
    summary.median_runtime = float(np.median([r.runtime for r in done]))
    summary.median_solutions = float(np.median([r.n_solutions for r in done]))
    for name in ("s75", "s90", "s100", "a75", "a90"):
        setattr(summary, name, _nanmean(getattr(r, name) for r in done))
    return summary
