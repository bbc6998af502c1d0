import time
import warnings

import numpy as np
import pytest

from ionc import (
    Dag,
    Domain,
    InputGraph,
    Instance,
    MalformedGraphError,
    OverlapWarning,
    SolverConfig,
    Status,
    Universe,
    check_candidate,
    forced_pair_domains,
    latent_project,
    solve,
)
from ionc._kernel import KERNELS
from ionc.oracle import brute_force_solve

from conftest import random_case, worked_example

X, Y, Z, W = 0, 1, 2, 3
TWO = {
    Dag.from_edges(4, [(X, Y), (Y, W), (W, Z)]).rows,
    Dag.from_edges(4, [(X, W), (W, Y), (Y, Z)]).rows,
}


def test_worked_example(example):
    sols = solve(example)
    assert sols.status is Status.COMPLETE
    assert sols.graph_set() == TWO


def test_check_candidate(example):
    assert check_candidate(example, Dag.from_edges(4, [(X, Y), (Y, W), (W, Z)]))
    assert not check_candidate(example, Dag.from_edges(4, [(X, Y), (Y, Z)]))
    g = Dag.from_edges(4, [(0, 1), (2, 1), (1, 3)])
    inst = Instance(Universe.numbered(4), [latent_project(g, range(4))])
    assert check_candidate(inst, g)
    assert solve(inst).graph_set() == {g.rows}


def test_unsatisfiable():
    u = Universe(("X", "Y"))
    inst = Instance(u, [InputGraph.from_edges([0, 1], [(0, 1)], []), InputGraph.from_edges([0, 1], [], [])])
    sols = solve(inst)
    assert sols.status is Status.UNSATISFIABLE and len(sols) == 0


def test_forced_domains():
    u = Universe.numbered(4)
    t1 = InputGraph.from_edges([0, 1, 2], [(0, 1)], [(1, 2)])
    t2 = InputGraph.from_edges([2, 3], [], [])
    dom = forced_pair_domains(Instance(u, [t1, t2]))
    assert dom[0, 1] is Domain.FREE and dom[1, 0] is Domain.FORBIDDEN
    assert dom[1, 2] is dom[2, 1] is Domain.FORBIDDEN
    assert dom[0, 2] is dom[2, 0] is Domain.FORBIDDEN
    assert dom[2, 3] is dom[3, 2] is Domain.FORBIDDEN
    assert dom[0, 3] is dom[3, 0] is Domain.FREE


def test_forbidden_bidirected_edges_never_in_solutions():
    for rep in range(20):
        case = random_case(5, 0.5, 0.25, 2, seed=11, rep=rep)
        dom = forced_pair_domains(case.instance)
        for g in solve(case.instance):
            assert all(dom[e] is Domain.FREE for e in g.edges)


def test_instance_validation():
    u = Universe.numbered(3)
    with pytest.raises(MalformedGraphError):
        Instance(u, [InputGraph.from_edges([0, 1], [], [])])  # node 2 uncovered
    with pytest.raises(MalformedGraphError):
        Instance(Universe.numbered(2), [InputGraph.from_edges([0, 1, 2], [], [])])
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        Instance(Universe.numbered(4), [InputGraph.from_edges([0, 1], [], []), InputGraph.from_edges([2, 3], [], [])])
    assert any(issubclass(x.category, OverlapWarning) for x in w)


@pytest.mark.parametrize("rep", range(12))
def test_matches_oracle(rep):
    case = random_case(5, [0.1, 0.25, 0.5, 0.75][rep % 4], [0.25, 0.5, 0.75][rep % 3], 2 + rep % 2, seed=5, rep=rep)
    assert solve(case.instance).same_graphs(brute_force_solve(case.instance))


def test_pruning_is_sound():
    for rep in range(15):
        case = random_case(5, 0.5, 0.5, 2, seed=21, rep=rep)
        a = solve(case.instance)
        b = solve(case.instance, prune=False)
        assert a.same_graphs(b)
        assert a.explored <= b.explored


@pytest.mark.parametrize("name", sorted(KERNELS))
def test_kernels_agree(name):
    for rep in range(10):
        case = random_case(7, 0.5, 0.5, 3, seed=8, rep=rep)
        ref = solve(case.instance, kernel=KERNELS["python"])
        got = solve(case.instance, kernel=KERNELS[name])
        assert np.array_equal(ref.rows, got.rows)
        assert ref.explored == got.explored


def test_output_is_canonical_without_sorting():
    case = random_case(6, 0.5, 0.25, 2, seed=3)
    sols = solve(case.instance)
    keys = [g.key() for g in sols]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_permutation_equivariance():
    rng = np.random.default_rng(9)
    for rep in range(10):
        case = random_case(6, 0.5, 0.5, 2, seed=13, rep=rep)
        perm = [int(v) for v in rng.permutation(6)]
        moved = Instance(case.instance.universe, [t.relabel(perm) for t in case.instance.inputs])
        want = {g.relabel(perm).rows for g in solve(case.instance)}
        assert solve(moved).graph_set() == want


def test_workers_same_result():
    for rep in range(6):
        case = random_case(8, 0.5, 0.5, 2, seed=17, rep=rep)
        one = solve(case.instance, SolverConfig(workers=1))
        many = solve(case.instance, SolverConfig(workers=3))
        assert one.status is many.status
        assert np.array_equal(one.rows, many.rows)


def test_cap(example):
    sols = solve(example, SolverConfig(max_solutions=1))
    assert sols.status is Status.CAPPED and len(sols) == 1
    sols = solve(example, SolverConfig(max_solutions=2))
    assert sols.status is Status.COMPLETE and len(sols) == 2


def test_cap_keeps_canonical_prefix():
    case = random_case(7, 0.5, 0.25, 2, seed=1)
    full = solve(case.instance)
    assert len(full) > 5
    for workers in (1, 2):
        part = solve(case.instance, SolverConfig(max_solutions=5, workers=workers))
        assert part.status is Status.CAPPED
        assert np.array_equal(part.rows, full.rows[:5])


@pytest.mark.filterwarnings("ignore::ionc.instance.OverlapWarning")
def test_timeout_returns_valid_partial():
    # a sparse, barely overlapping 10-node instance has a huge solution set
    case = random_case(10, 0.5, 0.0, 2, seed=2)
    t0 = time.monotonic()
    sols = solve(case.instance, SolverConfig(max_solutions=0, timeout=0.3))
    assert time.monotonic() - t0 < 2.0
    assert sols.status is Status.TIMED_OUT
    for g in sols.dags[:200]:
        assert check_candidate(case.instance, g)


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(workers=0)
    with pytest.raises(ValueError):
        SolverConfig(timeout=-1)


def test_worked_example_is_fast():
    inst = worked_example()
    t0 = time.monotonic()
    solve(inst)
    assert time.monotonic() - t0 < 1.0
