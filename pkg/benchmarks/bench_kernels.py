"""Compare the numba and numpy modular matmul backends.

Runs the raw kernel on a few shapes and then a full trefoil invariant over
the 16-dimensional algebra with each backend.  Usage::

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from krh import kernels, library
from krh.builtins import builtin_algebra
from krh.evaluator import hennings_invariant

P = 67108837  # a prime below 2**26

SHAPES = [(16, 256, 16), (64, 4096, 64), (256, 256, 256), (4, 65536, 16)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'shape':>20}  {'numba ms':>10}  {'numpy ms':>10}")
    for m, k, n in SHAPES:
        a = rng.integers(0, P, (m, k), dtype=np.int64)
        b = rng.integers(0, P, (k, n), dtype=np.int64)
        row = []
        ref = None
        for name in ("numba", "numpy"):
            kernels.set_backend(name)
            kernels.matmul_mod(a, b, P)  # warm up / compile
            row.append(best_of(lambda: kernels.matmul_mod(a, b, P), args.repeat) * 1e3)
            out = kernels.matmul_mod(a, b, P)
            assert ref is None or np.array_equal(ref, out), "backends disagree"
            ref = out
        print(f"{str((m, k, n)):>20}  {row[0]:10.2f}  {row[1]:10.2f}")

    alg = builtin_algebra("uq_sl2_prime_q4")
    T = library.trefoil()
    for name in ("numba", "numpy"):
        kernels.set_backend(name)
        hennings_invariant(T, alg)
        t = best_of(lambda: hennings_invariant(T, alg), args.repeat)
        print(f"trefoil INV over uq_sl2_prime_q4, {name}: {t * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
