import random
from math import comb

import networkx as nx
import pytest

from ionc import Dag, solve
from ionc.oracle import brute_force_solve
from ionc.synth import (
    SimParams,
    generate_ground_truth,
    make_case,
    rep_rng,
    round_half_up,
    sample_connections,
    split_overlapping,
)

from conftest import random_case


def _connected(g: Dag):
    return nx.is_connected(nx.Graph(g.edges)) if g.n > 1 and g.edges else g.n == 1


def test_round_half_up():
    assert [round_half_up(x) for x in (0.5, 1.5, 2.5, 0.49, 1.75)] == [1, 2, 3, 0, 2]
    assert round_half_up(0.25 * 6) == 2


@pytest.mark.parametrize("p,sizes", [(0.25, [5, 5]), (0.5, [6, 6]), (0.75, [7, 7])])
def test_subset_sizes(p, sizes):
    for rep in range(20):
        assert [len(s) for s in split_overlapping(8, 2, p, rep_rng(1, rep))] == sizes


def test_overlap_extremes():
    rng = rep_rng(2, 0)
    subs = split_overlapping(9, 3, 0.0, rng)
    assert sorted(v for s in subs for v in s) == list(range(9))
    assert all(len(s) == 3 for s in subs)
    assert split_overlapping(6, 3, 1.0, rng) == [tuple(range(6))] * 3


def test_p_zero_gives_tree():
    for rep in range(20):
        g = generate_ground_truth(8, 0.0, rep_rng(3, rep))
        assert g.num_edges() == 7 and _connected(g)


def test_p_one_gives_tournament():
    g = generate_ground_truth(6, 1.0, rep_rng(0, 0))
    assert g.edges == [(i, j) for i in range(6) for j in range(i + 1, 6)]


def test_ground_truth_connected_and_oriented():
    for rep in range(50):
        g = generate_ground_truth(8, [0.1, 0.25, 0.5][rep % 3], rep_rng(4, rep))
        assert _connected(g)
        assert all(a < b for a, b in g.edges)


def _reference_pairs(n, p, rnd):
    # binomial as a sum of Bernoulli trials, partners by shuffling
    pairs = set()
    for i in range(n):
        a = sum(rnd.random() < p for _ in range(n - 1))
        others = [j for j in range(n) if j != i]
        rnd.shuffle(others)
        pairs.update(tuple(sorted((i, j))) for j in others[:a])
    return pairs


def test_pre_repair_edge_mean():
    draws = 10_000
    rng = rep_rng(5, 0)
    ours = sum(len(sample_connections(8, 0.25, rng)) for _ in range(draws)) / draws
    rnd = random.Random(5)
    ref = sum(len(_reference_pairs(8, 0.25, rnd)) for _ in range(draws)) / draws
    analytic = comb(8, 2) * (1 - (1 - 0.25) ** 2)
    assert analytic == 12.25
    assert abs(ref - analytic) / analytic < 0.02
    assert abs(ours - ref) / ref < 0.02


def test_determinism():
    p = SimParams(8, 0.5, 0.5, 3, seed=42)
    a = make_case(p, rep_rng(42, 7))
    b = make_case(p, rep_rng(42, 7))
    assert a.ground_truth == b.ground_truth and a.subsets == b.subsets and a.instance == b.instance
    c = make_case(p, rep_rng(42, 8))
    assert (a.ground_truth, a.subsets) != (c.ground_truth, c.subsets)


def test_params_validation():
    with pytest.raises(ValueError):
        SimParams(4, 0.5, 0.5, 5)
    with pytest.raises(ValueError):
        SimParams(4, 1.5, 0.5, 2)
    with pytest.raises(ValueError):
        SimParams(4, 0.5, 0.5, 1)


def test_full_overlap_pins_ground_truth():
    for rep in range(10):
        case = random_case(7, 0.4, 1.0, 2, seed=6, rep=rep)
        assert solve(case.instance).graph_set() == {case.ground_truth.rows}


def test_oracle_membership():
    for rep in range(20):
        case = random_case(5, [0.1, 0.25, 0.5, 0.75][rep % 4], [0.25, 0.5, 0.75][rep % 3], 2 + rep % 2, seed=10, rep=rep)
        assert case.ground_truth.rows in brute_force_solve(case.instance).graph_set()
