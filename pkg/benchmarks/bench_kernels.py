"""Compare the compiled and pure-Python kernels on random flag complexes.

    python3 benchmarks/bench_kernels.py [--points 60 100 140] [--radius 0.4] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from itermorse import kernels
from itermorse.generators import random_flag_complex
from itermorse.homology import betti_numbers
from itermorse.oracle import reduction_intervals
from itermorse.persistence import persistence_pipeline


def best_of(repeat, func, *args):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = func(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, nargs="+", default=[60, 100, 140])
    parser.add_argument("--radius", type=float, default=0.4)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = kernels.available_backends()
    header = f"{'points':>6} {'cells':>7} " + " ".join(
        f"{b + ' ' + task:>18}" for b in backends for task in ("betti", "persist")) + f" {'reduction':>10}"
    print(header)
    for n in args.points:
        k = random_flag_complex(np.random.default_rng(args.seed), n, args.radius)
        row = f"{n:>6} {len(k):>7} "
        results = []
        for b in backends:
            kernels.set_backend(b)
            t_betti, betti = best_of(args.repeat, betti_numbers, k)
            t_pers, pers = best_of(args.repeat, persistence_pipeline, k)
            results.append((betti, pers))
            row += f"{t_betti:>17.3f}s {t_pers:>17.3f}s "
        t_red, oracle = best_of(1, reduction_intervals, k)
        row += f"{t_red:>9.3f}s"
        assert all(p == oracle for _, p in results), "backends disagree with the reduction"
        print(row)


if __name__ == "__main__":
    main()
