"""Enumerate every DAG whose latent projection onto each input's variables
reproduces that input exactly."""
from __future__ import annotations

import enum
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernel
from ._pysearch import TIMED_OUT
from .graph import Dag, canonical_key
from .instance import Instance
from .projection import InputGraph, PairLabel, latent_project

UNLIMITED = 1 << 62


class Status(str, enum.Enum):
    COMPLETE = "complete"
    CAPPED = "capped"
    TIMED_OUT = "timed_out"
    UNSATISFIABLE = "unsatisfiable"


class Domain(enum.Enum):
    FORBIDDEN = "forbidden"
    FREE = "free"


@dataclass(frozen=True)
class SolverConfig:
    max_solutions: int = 1_000_000  # 0 = unlimited
    timeout: float = 300.0  # seconds, 0 = none
    workers: int = 1

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.max_solutions < 0 or self.timeout < 0:
            raise ValueError("max_solutions and timeout must be non-negative")


@dataclass(eq=False)
class SolutionSet:
    """Canonically ordered, duplicate-free DAGs plus how the search ended.

    ``rows`` is an ``(m, n)`` uint64 array; row ``r`` holds the adjacency
    bitsets of the ``r``-th solution.
    """

    n: int
    rows: np.ndarray
    status: Status
    elapsed: float = 0.0
    explored: int = 0
    _dags: list | None = field(default=None, repr=False)

    @classmethod
    def from_dags(cls, n: int, dags: Iterable, status: Status, elapsed=0.0, explored=0):
        """Build from Dags or row tuples in any order; sorts and deduplicates."""
        uniq = {}
        for d in dags:
            rows = tuple(d.rows) if isinstance(d, Dag) else tuple(int(r) for r in d)
            if len(rows) != n:
                raise ValueError(f"solution has {len(rows)} rows, expected {n}")
            uniq[rows] = None
        ordered = sorted(uniq, key=lambda r: canonical_key(r, n))
        arr = np.array(ordered, dtype=np.uint64).reshape(len(ordered), n)
        return cls(n, arr, Status(status), elapsed, explored)

    def __len__(self) -> int:
        return int(self.rows.shape[0])

    @property
    def dags(self) -> list[Dag]:
        if self._dags is None:
            self._dags = [Dag(self.n, tuple(int(v) for v in r)) for r in self.rows]
        return self._dags

    def __iter__(self):
        return iter(self.dags)

    def graph_set(self) -> set[tuple[int, ...]]:
        return {tuple(int(v) for v in r) for r in self.rows}

    def same_graphs(self, other: "SolutionSet") -> bool:
        return self.n == other.n and self.graph_set() == other.graph_set()

    def __repr__(self):
        return f"SolutionSet(n={self.n}, solutions={len(self)}, status={self.status.value})"


def check_candidate(inst: Instance, h: Dag) -> bool:
    """True iff projecting ``h`` onto every input's variables gives that input back."""
    if h.n != inst.n:
        raise ValueError(f"candidate has {h.n} nodes, instance has {inst.n}")
    return all(latent_project(h, t.vars) == t for t in inst.inputs)


def forced_pair_domains(inst: Instance) -> dict[tuple[int, int], Domain]:
    """Ordered pairs that can never be a direct edge in any solution.

    ``(x, y)`` is forbidden when some input measuring both labels the pair
    absent, bidirected, or ``y -> x``.
    """
    n = inst.n
    dom = {(x, y): Domain.FREE for x in range(n) for y in range(n) if x != y}
    for x in range(n):
        dom[x, x] = Domain.FORBIDDEN
    for t in inst.inputs:
        for (a, b), lab in t.labels.items():
            if lab is not PairLabel.FORWARD:
                dom[a, b] = Domain.FORBIDDEN
            if lab is not PairLabel.BACKWARD:
                dom[b, a] = Domain.FORBIDDEN
    return dom


@dataclass
class _Table:
    obs: int
    lat: int
    fdir: list[int]
    req: list[int]
    bid: list[int]
    absn: list[int]
    fdir_src: int = 0
    req_src: int = 0
    bid_src: int = 0
    absn_src: int = 0


@dataclass
class SearchProblem:
    n: int
    pairs: list[tuple[int, int]]
    suffix: list[tuple[int, ...]]
    tables: list[_Table]


def _table(t: InputGraph, n: int) -> _Table:
    obs = t.mask
    tab = _Table(obs, ((1 << n) - 1) & ~obs, [0] * n, [0] * n, [0] * n, [0] * n)
    for (a, b), lab in t.labels.items():
        if lab is PairLabel.FORWARD:
            tab.req[a] |= 1 << b
            tab.fdir[b] |= 1 << a
        elif lab is PairLabel.BACKWARD:
            tab.req[b] |= 1 << a
            tab.fdir[a] |= 1 << b
        else:
            target = tab.bid if lab is PairLabel.BIDIRECTED else tab.absn
            target[a] |= 1 << b
            target[b] |= 1 << a
            tab.fdir[a] |= 1 << b
            tab.fdir[b] |= 1 << a
    for name in ("fdir", "req", "bid", "absn"):
        src = 0
        for x, m in enumerate(getattr(tab, name)):
            if m:
                src |= 1 << x
        setattr(tab, name + "_src", src)
    return tab


def build_problem(inst: Instance, prune: bool = True) -> SearchProblem:
    n = inst.n
    if prune:
        dom = forced_pair_domains(inst)
        pairs = [(x, y) for x in range(n) for y in range(n) if dom[x, y] is Domain.FREE]
    else:
        pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    suffix = [(0,) * n]
    acc = [0] * n
    for x, y in reversed(pairs):
        acc[x] |= 1 << y
        suffix.append(tuple(acc))
    suffix.reverse()
    return SearchProblem(n, pairs, suffix, [_table(t, n) for t in inst.inputs])


def _frontier(search, prob, workers, cap, deadline, prune):
    P = len(prob.pairs)
    depth = min(P, 6)
    while True:
        res = search(prob, 0, (0,) * prob.n, depth, cap, deadline, prune)
        if len(res[1]) >= 8 * workers or depth >= P or res[3]:
            return res
        depth = min(P, depth + 4)


def solve(inst: Instance, cfg: SolverConfig | None = None, *, prune: bool = True, kernel=None) -> SolutionSet:
    """Enumerate the solution set of ``inst``.

    With ``prune=False`` every off-diagonal pair is branched on and inputs are
    only checked at complete graphs; this is for testing the pruning rules.
    """
    cfg = cfg or SolverConfig()
    search = kernel or _kernel.search
    n = inst.n
    prob = build_problem(inst, prune)
    started = time.monotonic()
    deadline = started + cfg.timeout if cfg.timeout else 0.0
    cap = cfg.max_solutions + 1 if cfg.max_solutions else UNLIMITED

    if cfg.workers == 1:
        parts = [search(prob, 0, (0,) * n, -1, cap, deadline, prune)]
        explored = parts[0][2]
    else:
        head = _frontier(search, prob, cfg.workers, cap, deadline, prune)
        explored = head[2]
        parts = [head]
        if not head[3]:
            def run(node):
                return search(prob, node[0], node[1], -1, cap, deadline, prune)

            with ThreadPoolExecutor(cfg.workers) as ex:
                parts.extend(ex.map(run, head[1]))
            explored += sum(p[2] for p in parts[1:])

    flags = {p[3] for p in parts}
    chunks = [np.asarray(p[0], dtype=np.uint64).reshape(-1, n) for p in parts]
    rows = np.concatenate(chunks) if chunks else np.zeros((0, n), dtype=np.uint64)
    if TIMED_OUT in flags:
        status = Status.TIMED_OUT
    elif cfg.max_solutions and len(rows) > cfg.max_solutions:
        status = Status.CAPPED
    elif len(rows) == 0:
        status = Status.UNSATISFIABLE
    else:
        status = Status.COMPLETE
    if cfg.max_solutions and len(rows) > cfg.max_solutions:
        rows = rows[: cfg.max_solutions]
    return SolutionSet(n, np.ascontiguousarray(rows), status, time.monotonic() - started, int(explored))

