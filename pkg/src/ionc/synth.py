"""Seeded generation of ground-truth DAGs and overlapping variable subsets.

Randomness comes from numpy's PCG64 bit generator; every replicate draws from
its own stream seeded by ``SeedSequence([seed, rep])`` so replicates can be
generated in any order or in parallel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Dag, Universe
from .instance import Instance, overlap_connected
from .projection import latent_project

RNG_ALGORITHM = f"numpy-{np.__version__}/PCG64/SeedSequence([seed, rep])"

MAX_SPLIT_ATTEMPTS = 100


@dataclass(frozen=True)
class SimParams:
    n_nodes: int
    p_degree: float
    p_overlap: float
    s: int
    seed: int = 0
    reps: int = 1

    def __post_init__(self):
        if self.n_nodes < 2:
            raise ValueError("n_nodes must be >= 2")
        if not 2 <= self.s <= self.n_nodes:
            raise ValueError("need 2 <= s <= n_nodes")
        for p in (self.p_degree, self.p_overlap):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")
        if self.reps < 1:
            raise ValueError("reps must be >= 1")


@dataclass(frozen=True)
class GeneratedCase:
    ground_truth: Dag
    subsets: tuple[tuple[int, ...], ...]
    instance: Instance

    __hash__ = None


def rep_rng(seed: int, rep: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, rep])))


def round_half_up(x: float) -> int:
    # guard against 0.5 products landing a hair below due to float error
    return int(math.floor(x + 0.5 + 1e-9))


def sample_connections(n: int, p_degree: float, rng: np.random.Generator) -> set[tuple[int, int]]:
    """Undirected pairs ``(lo, hi)`` before connectivity repair.

    Node ``i`` draws ``a ~ Binomial(n - 1, p_degree)`` and picks ``a`` distinct
    partners uniformly from the other nodes.
    """
    pairs = set()
    for i in range(n):
        a = int(rng.binomial(n - 1, p_degree))
        if not a:
            continue
        others = np.array([j for j in range(n) if j != i])
        for j in rng.choice(others, size=a, replace=False):
            j = int(j)
            pairs.add((min(i, j), max(i, j)))
    return pairs


def _components(n, pairs):
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in pairs:
        parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def generate_ground_truth(n: int, p_degree: float, rng: np.random.Generator) -> Dag:
    """Random connected DAG with every edge oriented lower index -> higher index."""
    if n < 2:
        raise ValueError("ground truth needs at least 2 nodes")
    pairs = sample_connections(n, p_degree, rng)
    comps = _components(n, pairs)
    while len(comps) > 1:
        i, j = rng.choice(len(comps), size=2, replace=False)
        a = int(rng.choice(comps[i]))
        b = int(rng.choice(comps[j]))
        pairs.add((min(a, b), max(a, b)))
        comps = _components(n, pairs)
    return Dag.from_edges(n, sorted(pairs))


def split_overlapping(n: int, s: int, p_overlap: float, rng: np.random.Generator) -> list[tuple[int, ...]]:
    """Shuffle nodes into ``s`` near-equal blocks, then add to each block a
    without-replacement sample of ``round(p_overlap * (n - |block|))`` nodes
    drawn from the other blocks."""
    if s > n:
        raise ValueError(f"cannot split {n} nodes into {s} subsets")
    if s < 1:
        raise ValueError("need at least one subset")
    order = rng.permutation(n)
    blocks = [list(map(int, b)) for b in np.array_split(order, s)]
    subsets = []
    for i, block in enumerate(blocks):
        rest = [v for j, b in enumerate(blocks) if j != i for v in b]
        k = round_half_up(p_overlap * len(rest))
        extra = rng.choice(rest, size=k, replace=False) if k else []
        subsets.append(tuple(sorted(block + [int(v) for v in extra])))
    return subsets


def make_case(params: SimParams, rng: np.random.Generator) -> GeneratedCase:
    """Ground truth, subsets and the projected instance for one replicate.

    When ``p_overlap > 0`` the subsets are redrawn (up to a fixed number of
    attempts) until their overlap structure is connected.
    """
    n = params.n_nodes
    truth = generate_ground_truth(n, params.p_degree, rng)
    subsets = split_overlapping(n, params.s, params.p_overlap, rng)
    if params.p_overlap > 0:
        attempts = 1
        while not overlap_connected(subsets) and attempts < MAX_SPLIT_ATTEMPTS:
            subsets = split_overlapping(n, params.s, params.p_overlap, rng)
            attempts += 1
    inputs = [latent_project(truth, sub) for sub in subsets]
    inst = Instance(Universe.numbered(n), inputs)
    return GeneratedCase(truth, tuple(subsets), inst)
