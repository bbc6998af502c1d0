import numpy as np
import pytest

from ionc import InputGraph, Instance, Universe
from ionc.synth import SimParams, make_case, rep_rng


def worked_example():
    # X=0, Y=1, Z=2, W=3
    u = Universe(("X", "Y", "Z", "W"))
    g1 = InputGraph.from_edges([0, 1, 2], [(0, 1), (1, 2)], [])
    g2 = InputGraph.from_edges([0, 3, 2], [(0, 3), (3, 2)], [])
    return Instance(u, [g1, g2])


def random_case(n, p_degree, p_overlap, s, seed, rep=0):
    return make_case(SimParams(n, p_degree, p_overlap, s, seed), rep_rng(seed, rep))


@pytest.fixture
def example():
    return worked_example()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE: dict[int, str] = {}


def verdict(num, ok, detail):
    """Record and print one acceptance line, then fail the test if not ok."""
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[num] = line
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[num])
