"""Exact tensor-network contraction over Q(zeta_n) by multi-modular arithmetic.

Each tensor is a :class:`~krh.field.FieldArray` with integer labels on its
axes.  A label shared by two tensors is summed over; a label carried by one
tensor only is an output.  The contraction order comes from opt_einsum
(planning on shapes only), then executed

1. in floating point on entrywise l1 norms, giving a rigorous bound on the
   size of the integer result;
2. modulo enough primes ``p = 1 (mod n)``, once for every primitive n-th
   root of unity mod p;

and the exact answer is rebuilt by a Vandermonde solve per prime followed
by Chinese remaindering.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import opt_einsum as oe

from . import kernels
from .field import CyclotomicField, FieldArray

__all__ = ["Network", "BudgetExceeded", "contract", "plan_contraction", "primes_for"]


class BudgetExceeded(RuntimeError):
    """The estimated work exceeds the configured term budget."""


@dataclass
class Network:
    field: CyclotomicField
    tensors: list  # FieldArray
    labels: list  # tuple[int, ...] per tensor
    output: tuple  # labels of the result, in order

    def dims(self) -> dict:
        out = {}
        for t, ls in zip(self.tensors, self.labels):
            if len(ls) != t.ndim:
                raise ValueError(f"tensor of rank {t.ndim} given labels {ls}")
            for n, l in zip(t.shape, ls):
                if out.setdefault(l, n) != n:
                    raise ValueError(f"label {l} has inconsistent sizes")
        return out


# ---------------------------------------------------------------------------
# planning


def _path_cost(path, labels, output, dims) -> int:
    """Multiply-adds spent along an opt_einsum style path."""
    live = [tuple(ls) for ls in labels]
    cost = 0
    for step in path:
        ops = [live[i] for i in step]
        for i in sorted(step, reverse=True):
            del live[i]
        merged: list = []
        for ls in ops:
            merged.extend(ls)
        keep = tuple(l for l in dict.fromkeys(merged) if merged.count(l) == 1 or l in output)
        summed = [l for l in dict.fromkeys(merged) if l not in keep]
        cost += math.prod(dims[l] for l in keep) * math.prod(dims[l] for l in summed)
        live.append(keep)
    return cost


# escalation thresholds for the planner (multiply-adds)
_TRY_RANDOM = 10**6
_TRY_DP = 10**7


def plan_contraction(labels: list, output: tuple, dims: dict, optimize=None):
    """Pairwise contraction plan ``(path, cost)``.

    The path is in opt_einsum form: each step names positions in the
    current operand list; those operands are removed and the result is
    appended.  ``cost`` counts multiply-adds.  Without ``optimize`` the
    greedy plan is tried first, then a seeded randomized greedy search and,
    for networks of at most 40 tensors, dynamic programming, stopping as
    soon as the plan is cheap.
    """
    counts: dict = {}
    for ls in labels:
        for l in ls:
            counts[l] = counts.get(l, 0) + 1
    for l, c in counts.items():
        if c > 2 or (c == 2 and l in output):
            raise ValueError(f"label {l} appears too often")
    if len(labels) < 2:
        return [], 0
    symbols = {l: oe.get_symbol(n) for n, l in enumerate(sorted(counts))}
    eq = ",".join("".join(symbols[l] for l in ls) for ls in labels)
    eq += "->" + "".join(symbols[l] for l in output)
    shapes = [tuple(dims[l] for l in ls) for ls in labels]

    def attempt(opt):
        path, _ = oe.contract_path(eq, *shapes, shapes=True, optimize=opt)
        path = [tuple(st) for st in path]
        return path, _path_cost(path, labels, output, dims)

    if optimize is not None:
        return attempt(optimize)
    best = attempt("greedy")
    if best[1] > _TRY_RANDOM:
        # the randomized search reseeds the global generator per trial
        state = random.getstate()
        try:
            cand = attempt(oe.RandomGreedy(max_repeats=32))
        finally:
            random.setstate(state)
        best = min(best, cand, key=lambda pc: pc[1])
    if best[1] > _TRY_DP and len(labels) <= 40:
        best = min(best, attempt("dp"), key=lambda pc: pc[1])
    return best


# ---------------------------------------------------------------------------
# primes and roots of unity


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def primes_for(n: int, count: int) -> tuple:
    """The ``count`` largest primes ``p < 2**26`` with ``p = 1 (mod n)``."""
    out = []
    m = max(n, 2)
    p = ((1 << kernels.MAX_PRIME_BITS) - 1) // m * m + 1
    while len(out) < count:
        if p < (1 << kernels.MAX_PRIME_BITS) and _is_prime(p):
            out.append(p)
        p -= m
        if p < 3:
            raise RuntimeError("ran out of primes")
    return tuple(out)


def _prime_factors(n: int) -> list:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def primitive_roots(n: int, p: int) -> tuple:
    """Primitive n-th roots of unity mod p, ordered as ``r^k`` for k coprime to n."""
    if n == 1:
        return (1,)
    facs = _prime_factors(p - 1)
    g = next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in facs))
    r = pow(g, (p - 1) // n, p)
    return tuple(pow(r, k, p) for k in range(1, n + 1) if math.gcd(k, n) == 1)


@lru_cache(maxsize=None)
def _vandermonde_inverse(n: int, phi: int, p: int) -> np.ndarray:
    roots = primitive_roots(n, p)
    V = [[pow(r, c, p) for c in range(phi)] for r in roots]
    # Gauss-Jordan mod p
    aug = [row + [1 if i == j else 0 for j in range(phi)] for i, row in enumerate(V)]
    for col in range(phi):
        piv = next(r for r in range(col, phi) if aug[r][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [x * inv % p for x in aug[col]]
        for r in range(phi):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
    return np.array([row[phi:] for row in aug], dtype=object)


@lru_cache(maxsize=None)
def _power_bound(n: int) -> int:
    """max over k of the largest power-basis coefficient of zeta^k."""
    from .field import field

    f = field(n)
    return max(max(abs(int(c)) for c in f._powers[k]) for k in range(n))


# ---------------------------------------------------------------------------
# execution


def _pair(A, la, B, lb, mul):
    shared = [l for l in la if l in lb]
    fa = [l for l in la if l not in shared]
    fb = [l for l in lb if l not in shared]
    pa = [la.index(l) for l in fa] + [la.index(l) for l in shared]
    pb = [lb.index(l) for l in shared] + [lb.index(l) for l in fb]
    A2 = np.transpose(A, pa)
    B2 = np.transpose(B, pb)
    sa = A2.shape[: len(fa)]
    sb = B2.shape[len(shared) :]
    k = math.prod(A2.shape[len(fa) :])
    C = mul(A2.reshape(math.prod(sa), k), B2.reshape(k, math.prod(sb)))
    return C.reshape(tuple(sa) + tuple(sb)), tuple(fa + fb)


def _run(arrays, labels, path, mul):
    live = list(zip(arrays, [tuple(l) for l in labels]))
    for step in path:
        if len(step) != 2:
            raise ValueError("only pairwise contraction steps are supported")
        a, b = step
        A, la = live[a]
        B, lb = live[b]
        for i in sorted(step, reverse=True):
            del live[i]
        live.append(_pair(A, la, B, lb, mul))
    return live[0]


def contract(net: Network, term_budget: int | None = None) -> FieldArray:
    """Exact contraction of ``net``; returns a FieldArray over ``net.output``."""
    fld = net.field
    n, phi = fld.n, fld.phi
    dims = net.dims()
    for l in net.output:
        if l not in dims:
            raise ValueError(f"output label {l} not present")
    if not net.tensors:
        return _scalar_one(fld)
    steps, cost = plan_contraction([tuple(l) for l in net.labels], tuple(net.output), dims)
    if term_budget is not None and cost > term_budget:
        raise BudgetExceeded(f"estimated {cost} multiply-adds exceeds the term budget of {term_budget}")

    # integer numerators and denominators
    nums = [t.num for t in net.tensors]
    den = 1
    for t in net.tensors:
        den *= t.den

    # l1 bound in floating point
    absarr = [np.sum(np.abs(x.astype(np.float64)), axis=-1) if x.size else np.zeros(x.shape[:-1]) for x in nums]
    with np.errstate(over="raise", invalid="raise"):
        try:
            bound_arr, _ = _run(absarr, net.labels, steps, lambda a, b: a @ b)
        except FloatingPointError:
            raise BudgetExceeded("coefficient bound overflowed double precision") from None
    bound = float(np.max(bound_arr)) if np.size(bound_arr) else 0.0
    limit = 2 * (bound * (1 + 1e-9) + 1) * _power_bound(n) + 2

    primes = []
    modulus = 1
    k = 0
    while modulus <= limit:
        k += 1
        primes = list(primes_for(n, k))
        modulus = math.prod(primes)

    residues = []
    out_labels = None
    for p in primes:
        roots = primitive_roots(n, p)
        evals = []
        for r in roots:
            rp = np.array([pow(r, c, p) for c in range(phi)], dtype=object)
            arrs = []
            for x in nums:
                # evaluate the coefficient polynomial at r, reduce mod p
                v = (np.asarray(x % p, dtype=object) @ rp) % p if phi > 1 else (x[..., 0] % p)
                arrs.append(np.asarray(v, dtype=np.int64))
            res, out_labels = _run(arrs, net.labels, steps, lambda a, b, p=p: kernels.matmul_mod(a, b, p))
            evals.append(np.asarray(res, dtype=object))
        Vinv = _vandermonde_inverse(n, phi, p)
        stacked = np.stack(evals, axis=-1)  # (..., phi) values at the roots
        coeffs = (stacked @ Vinv.T) % p
        residues.append(coeffs)

    # CRT to symmetric range
    total = residues[0].astype(object)
    M = primes[0]
    for p, r in zip(primes[1:], residues[1:]):
        inv = pow(M, -1, p)
        t = ((r - total) % p) * inv % p
        total = total + M * t
        M *= p
    half = M // 2
    total = np.where(total > half, total - M, total)
    order = [out_labels.index(l) for l in net.output]
    total = np.transpose(total, order + [len(order)])
    return FieldArray(fld, np.asarray(total, dtype=object), den)


def _scalar_one(fld) -> FieldArray:
    num = np.zeros((fld.phi,), dtype=object)
    num[...] = 0
    num[0] = 1
    return FieldArray(fld, num, 1)
