"""Integration of overlapping causal graphs by exhaustive constrained search.

Given input graphs over overlapping subsets of a shared variable universe,
enumerate every global DAG whose latent projections reproduce all inputs.
"""
from ._kernel import BACKEND as KERNEL_BACKEND
from .graph import Dag, MalformedGraphError, Universe, d_separated, is_acyclic, reachable_through
from .instance import Instance, OverlapWarning
from .projection import InputGraph, PairLabel, causal_conn, dir_t, latent_project
from .solver import (
    Domain,
    SolutionSet,
    SolverConfig,
    Status,
    check_candidate,
    forced_pair_domains,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "Dag",
    "Domain",
    "InputGraph",
    "Instance",
    "KERNEL_BACKEND",
    "MalformedGraphError",
    "OverlapWarning",
    "PairLabel",
    "SolutionSet",
    "SolverConfig",
    "Status",
    "Universe",
    "causal_conn",
    "check_candidate",
    "d_separated",
    "dir_t",
    "forced_pair_domains",
    "is_acyclic",
    "latent_project",
    "reachable_through",
    "solve",
]
