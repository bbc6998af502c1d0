import math
from itertools import combinations

import numpy as np
import pytest

from ionc import Dag, SolutionSet, Status, solve
from ionc.oracle import brute_force_solve
from ionc.stats import (
    THRESHOLDS,
    RunStats,
    aggregate,
    edge_frequencies,
    prop_accurate,
    prop_same,
    run_stats,
)

from conftest import random_case


def sset(n, graphs, status=Status.COMPLETE):
    return SolutionSet.from_dags(n, graphs, status)


def recount(graphs, n, threshold, truth=None):
    """Plain-loop recount over Dag objects."""
    kept, right = 0, 0
    for a, b in combinations(range(n), 2):
        adj = sum(g.adjacent(a, b) for g in graphs)
        modal = adj * 2 > len(graphs)
        share = max(adj, len(graphs) - adj) / len(graphs)
        if share >= threshold - 1e-12:
            kept += 1
            right += truth is not None and modal == truth.adjacent(a, b)
    same = kept / math.comb(n, 2)
    acc = right / kept if kept else math.nan
    return same, acc


def test_single_solution():
    g = Dag.from_edges(4, [(0, 1), (2, 3)])
    s = sset(4, [g])
    for t in THRESHOLDS:
        assert prop_same(s, t) == 1.0
        assert prop_accurate(s, g, t) == 1.0
    assert set(edge_frequencies(s).values()) <= {0.0, 1.0}


def test_one_differing_pair():
    a = Dag.from_edges(5, [(0, 1), (1, 2)])
    b = Dag.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert prop_same(sset(5, [a, b]), 0.75) == pytest.approx(9 / 10)


def test_orientation_is_ignored():
    a = Dag.from_edges(3, [(0, 1)])
    b = Dag.from_edges(3, [(1, 0)])
    assert prop_same(sset(3, [a, b]), 1.0) == 1.0


def test_worked_example_frequencies(example):
    f = edge_frequencies(solve(example))
    X, Y, Z, W = 0, 1, 2, 3
    assert f[Y, W] == f[W, Y] == 0.5
    assert f[X, Y] == f[X, W] == 0.5
    assert f[Y, X] == f[X, Z] == f[Z, X] == 0.0
    assert f[Y, W] + f[W, Y] == 1.0


def test_errors():
    empty = sset(3, [], Status.UNSATISFIABLE)
    with pytest.raises(ValueError):
        prop_same(empty, 0.9)
    with pytest.raises(ValueError):
        edge_frequencies(empty)
    with pytest.raises(ValueError):
        prop_same(sset(2, [Dag.empty(2)]), 0.5)


def test_recount_on_oracle_sets():
    for rep in range(12):
        case = random_case(5, [0.25, 0.5, 0.75][rep % 3], [0.25, 0.5][rep % 2], 2, seed=44, rep=rep)
        sols = brute_force_solve(case.instance)
        graphs = sols.dags
        for t in THRESHOLDS:
            same, acc = recount(graphs, 5, t, case.ground_truth)
            assert prop_same(sols, t) == pytest.approx(same)
            got = prop_accurate(sols, case.ground_truth, t)
            assert (math.isnan(got) and math.isnan(acc)) or got == pytest.approx(acc)
        f = edge_frequencies(sols)
        for a, b in combinations(range(5), 2):
            adj = sum(g.adjacent(a, b) for g in graphs) / len(graphs)
            assert f[a, b] + f[b, a] == pytest.approx(adj)


def test_threshold_order_and_certainty():
    for rep in range(30):
        case = random_case(7, [0.1, 0.25, 0.5, 0.75][rep % 4], [0.25, 0.5, 0.75][rep % 3], 2 + rep % 3, seed=45, rep=rep)
        rs = run_stats(solve(case.instance), case.ground_truth)
        assert rs.s100 <= rs.s90 <= rs.s75
        assert rs.a100 == 1.0


def test_relabel_and_reorder_invariance():
    rng = np.random.default_rng(0)
    case = random_case(6, 0.5, 0.25, 2, seed=46)
    sols = solve(case.instance)
    perm = [int(v) for v in rng.permutation(6)]
    moved = sset(6, [g.relabel(perm) for g in reversed(sols.dags)])
    truth = case.ground_truth.relabel(perm)
    for t in THRESHOLDS:
        assert prop_same(moved, t) == prop_same(sols, t)
        assert prop_accurate(moved, truth, t) == prop_accurate(sols, case.ground_truth, t)


def _rows(k_done, k_total, status=Status.TIMED_OUT):
    done = [RunStats(Status.COMPLETE, 1, 0.1, s75=1.0, s90=1.0, s100=1.0, a75=1.0, a90=1.0) for _ in range(k_done)]
    return done + [RunStats(status, 0, 1.0) for _ in range(k_total - k_done)]


def test_aggregate_suppression():
    assert aggregate(_rows(0, 10)).suppressed
    assert aggregate(_rows(94, 100)).suppressed
    s = aggregate(_rows(95, 100))
    assert not s.suppressed and s.n_completed == 95 and s.s90 == 1.0
    assert aggregate(_rows(95, 100, Status.CAPPED)).n_completed == 95


def test_aggregate_median_not_mean():
    rows = [RunStats(Status.COMPLETE, n, 0.1) for n in (1, 5, 25648)]
    s = aggregate(rows)
    assert s.median_solutions == 5.0
    assert s.median_runtime == pytest.approx(0.1)
