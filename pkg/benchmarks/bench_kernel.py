"""Compare the compiled and pure-Python search kernels on generated instances.

    python3 benchmarks/bench_kernel.py [--nodes 8] [--reps 10] [--seed 0]
"""
import argparse
import time

import numpy as np

from ionc import SolverConfig, solve
from ionc._kernel import KERNELS
from ionc.synth import SimParams, make_case, rep_rng


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--nodes", type=int, default=8)
    ap.add_argument("--degree", type=float, default=0.5)
    ap.add_argument("--overlap", type=float, default=0.5)
    ap.add_argument("--subgraphs", type=int, default=2)
    ap.add_argument("--reps", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    params = SimParams(args.nodes, args.degree, args.overlap, args.subgraphs, args.seed)
    cases = [make_case(params, rep_rng(args.seed, r)).instance for r in range(args.reps)]
    cfg = SolverConfig(max_solutions=0, timeout=0)
    results = {}
    for name, kernel in sorted(KERNELS.items()):
        t0 = time.perf_counter()
        sols = [solve(inst, cfg, kernel=kernel) for inst in cases]
        results[name] = (time.perf_counter() - t0, sols)
        n_sol = sum(len(s) for s in sols)
        nodes = sum(s.explored for s in sols)
        print(f"{name:9s} {results[name][0]:9.3f}s  {n_sol:9d} solutions  {nodes:10d} nodes")
    if len(results) == 2:
        (tc, sc), (tp, sp) = results["compiled"], results["python"]
        assert all(np.array_equal(a.rows, b.rows) for a, b in zip(sc, sp)), "kernels disagree"
        print(f"speedup   {tp / tc:9.1f}x")
    else:
        print("compiled kernel not built; only the python kernel ran")


if __name__ == "__main__":
    main()
