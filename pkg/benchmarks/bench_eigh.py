#!/usr/bin/env python3
"""Benchmark the compiled Jacobi kernel against the pure-Python fallback
(and numpy's LAPACK eigh as a reference) on the matrix sizes this package
actually uses (4, 9, 16)."""

from __future__ import annotations

import argparse
import time

import numpy as np

from teleres.linalg import hermitian_eigen
from teleres.oracle import _rng, random_hermitian


def timed(fn, reps: int) -> float:
    best = float("inf")
    for _ in range(3):
        start = time.perf_counter()
        for _ in range(reps):
            fn()
        best = min(best, (time.perf_counter() - start) / reps)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=200)
    args = parser.parse_args()

    print(f"{'dim':>4} {'compiled':>12} {'python':>12} {'numpy.eigh':>12} {'py/compiled':>12}")
    for n in (4, 9, 16):
        mats = [random_hermitian(n, _rng(77, i)) for i in range(8)]

        def run(backend):
            def body():
                for m in mats:
                    hermitian_eigen(m, backend=backend)
            return body

        def run_numpy():
            for m in mats:
                np.linalg.eigh(m)

        t_c = timed(run("compiled"), args.reps) / len(mats)
        t_p = timed(run("python"), max(1, args.reps // 20)) / len(mats)
        t_n = timed(run_numpy, args.reps) / len(mats)
        print(f"{n:>4} {t_c * 1e6:>10.1f}us {t_p * 1e6:>10.1f}us {t_n * 1e6:>10.1f}us {t_p / t_c:>11.1f}x")


if __name__ == "__main__":
    main()
