"""Brute-force reference: enumerate every labelled DAG and keep those that
pass :func:`ionc.solver.check_candidate`.  Only for small universes."""
from __future__ import annotations

import time
from functools import lru_cache
from typing import Iterator

from .graph import Dag
from .instance import Instance
from .projection import PairLabel
from .solver import SolutionSet, Status, check_candidate

DEFAULT_MAX_NODES = 6


class OracleLimitError(ValueError):
    """The universe is too large for exhaustive enumeration."""


def _check_limit(n: int, max_nodes: int):
    if n > max_nodes:
        raise OracleLimitError(f"refusing to enumerate DAGs on {n} nodes (limit {max_nodes})")
    if n < 0:
        raise ValueError("node count must be non-negative")


def _reaches(rows, src, dst):
    seen = {src}
    stack = [src]
    while stack:
        u = stack.pop()
        r = rows[u]
        v = 0
        while r:
            if r & 1:
                if v == dst:
                    return True
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
            r >>= 1
            v += 1
    return False


def _dag_rows(n: int) -> Iterator[tuple[int, ...]]:
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    rows = [0] * n

    # bit order of the row-major bitstring: absent before present at each pair
    def rec(k):
        if k == len(pairs):
            yield tuple(rows)
            return
        yield from rec(k + 1)
        i, j = pairs[k]
        if not _reaches(rows, j, i):
            rows[i] |= 1 << j
            yield from rec(k + 1)
            rows[i] &= ~(1 << j)

    yield from rec(0)


@lru_cache(maxsize=8)
def _all_rows(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_dag_rows(n))


def enumerate_all_dags(n: int, max_nodes: int = DEFAULT_MAX_NODES) -> Iterator[Dag]:
    """Every labelled DAG on ``n`` nodes, once each, in ascending bitstring order."""
    _check_limit(n, max_nodes)
    for rows in _dag_rows(n):
        yield Dag(n, rows)


def _direct_edge_masks(inst: Instance) -> list[int]:
    # a direct edge between two measured variables projects to that same
    # directed edge, so any other label rules it out
    allowed = [(1 << inst.n) - 1 & ~(1 << i) for i in range(inst.n)]
    for t in inst.inputs:
        for (a, b), lab in t.labels.items():
            if lab is not PairLabel.FORWARD:
                allowed[a] &= ~(1 << b)
            if lab is not PairLabel.BACKWARD:
                allowed[b] &= ~(1 << a)
    return allowed


def brute_force_solve(inst: Instance, max_nodes: int = DEFAULT_MAX_NODES) -> SolutionSet:
    """Every DAG on the universe that passes :func:`check_candidate`."""
    n = inst.n
    _check_limit(n, max_nodes)
    started = time.monotonic()
    rows_list = _all_rows(n) if n <= 5 else _dag_rows(n)
    allowed = _direct_edge_masks(inst)
    found = []
    count = 0
    for rows in rows_list:
        count += 1
        if any(r & ~m for r, m in zip(rows, allowed)):
            continue
        if check_candidate(inst, Dag(n, rows)):
            found.append(rows)
    status = Status.COMPLETE if found else Status.UNSATISFIABLE
    return SolutionSet.from_dags(n, found, status, time.monotonic() - started, count)
