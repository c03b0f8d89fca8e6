"""Time the compiled core against the pure-Python fallback.

    python3 benchmarks/bench_backends.py [--n 300] [--repeats 5]

Both backends produce bitwise-identical results, so the script also checks
that the outputs agree before reporting timings.
"""
import argparse
import time

import numpy as np

from pwcolor import SolverParams, degree_to_p, generate_partite, solve
from pwcolor._backend import BACKENDS


def bench(g, algo, backend, repeats, max_steps):
    times, results = [], []
    for s in range(repeats):
        params = SolverParams(k=3, max_steps=max_steps, seed=s, backend=backend)
        t0 = time.perf_counter()
        results.append(solve(g, params, algo))
        times.append(time.perf_counter() - t0)
    return float(np.median(times)), results


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=300)
    ap.add_argument("--dbar", type=float, default=4.6)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args(argv)
    g = generate_partite(args.n, 3, degree_to_p(args.n, 3, args.dbar), seed=1)
    budgets = {"sequential": 50 * args.n, "naive": 300, "mppw": 300}
    print(f"backends available: {', '.join(sorted(BACKENDS))}; n={args.n} m={g.m}")
    print(f"{'algo':<11}{'backend':<9}{'median s':>10}{'speedup':>9}")
    for algo, steps in budgets.items():
        base = None
        ref = None
        for backend in ("python", "cython"):
            if backend not in BACKENDS:
                continue
            t, results = bench(g, algo, backend, args.repeats, steps)
            sig = [(r.steps, r.phase1_steps, r.best_energy) for r in results]
            if ref is not None and sig != ref:
                raise SystemExit(f"{algo}: backends disagree")
            ref = sig
            base = base or t
            print(f"{algo:<11}{backend:<9}{t:>10.4f}{base / t:>8.1f}x")


if __name__ == "__main__":
    main()
