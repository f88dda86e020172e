"""Modular matrix-multiply kernels.

The contraction engine reduces every exact computation to products of
int64 matrices modulo primes below 2**26.  Two interchangeable backends:

* ``numba`` (default): a compiled triple loop with delayed reduction.
* ``numpy``: blocked ``np.matmul`` over chunks of the inner dimension.

Set ``KRH_BACKEND=numpy`` to force the pure-numpy path (also used when
numba cannot be imported).
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["matmul_mod", "backend", "set_backend", "MAX_PRIME_BITS", "CHUNK"]

MAX_PRIME_BITS = 26
# products are < 2**52, so 2**11 of them fit in int64 before reduction
CHUNK = 2048

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    _HAVE_NUMBA = True
except Exception:  # pragma: no cover
    _HAVE_NUMBA = False

_backend = os.environ.get("KRH_BACKEND", "numba").strip().lower()
if _backend not in ("numba", "numpy"):
    raise ValueError(f"KRH_BACKEND must be 'numba' or 'numpy', got {_backend!r}")
if _backend == "numba" and not _HAVE_NUMBA:  # pragma: no cover
    _backend = "numpy"


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    """Switch backends at runtime (benchmarks and tests use this)."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(name)
    if name == "numba" and not _HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    _backend = name


def _matmul_mod_numpy(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    k = a.shape[1]
    if k <= CHUNK:
        return np.matmul(a, b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, CHUNK):
        out += np.matmul(a[:, s : s + CHUNK], b[s : s + CHUNK]) % p
        out %= p
    return out


if _HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _matmul_mod_numba(a, b, p):  # pragma: no cover - compiled
        m, k = a.shape
        n = b.shape[1]
        out = np.zeros((m, n), dtype=np.int64)
        acc = np.zeros(n, dtype=np.int64)
        for i in range(m):
            acc[:] = 0
            pending = 0
            for t in range(k):
                x = a[i, t]
                if x == 0:
                    continue
                for j in range(n):
                    acc[j] += x * b[t, j]
                pending += 1
                if pending == 2048:
                    for j in range(n):
                        acc[j] %= p
                    pending = 0
            for j in range(n):
                out[i, j] = acc[j] % p
        return out


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``(a @ b) mod p`` for int64 matrices with entries in ``[0, p)``."""
    if p >= 1 << MAX_PRIME_BITS:
        raise ValueError("modulus too large for the int64 kernels")
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if _backend == "numba":
        return _matmul_mod_numba(a, b, np.int64(p))
    return _matmul_mod_numpy(a, b, p)
