"""Exact Gaussian elimination over a cyclotomic field.

Matrices are plain lists of rows of :class:`~krh.field.Scalar`.  The sizes
seen here (a few hundred rows, at most a few dozen columns) do not warrant
anything cleverer.
"""

from __future__ import annotations

from .field import CyclotomicField, Scalar

Matrix = list  # list[list[Scalar]]


class SingularMatrixError(ArithmeticError):
    pass


def rref(rows: Matrix, fld: CyclotomicField, ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``.

    Zero rows are dropped from the result.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    basis: list[list[Scalar]] = []
    pivots: list[int] = []
    for row in rows:
        r = list(row)
        # eliminate against existing pivots
        for b, p in zip(basis, pivots):
            c = r[p]
            if c:
                r = [x - c * y for x, y in zip(r, b)]
        lead = next((k for k in range(ncols) if r[k]), None)
        if lead is None:
            continue
        inv = r[lead].inverse()
        r = [x * inv for x in r]
        # back-substitute into the rows already kept
        for idx, b in enumerate(basis):
            c = b[lead]
            if c:
                basis[idx] = [x - c * y for x, y in zip(b, r)]
        basis.append(r)
        pivots.append(lead)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def nullspace(rows: Matrix, fld: CyclotomicField, ncols: int) -> list[list[Scalar]]:
    """Basis of ``{x : rows @ x = 0}``; each vector has a 1 in a free column."""
    red, piv = rref(rows, fld, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = []
    for f in free:
        v = [fld.zero] * ncols
        v[f] = fld.one
        for r, p in zip(red, piv):
            v[p] = -r[f]
        out.append(v)
    return out


def rank(rows: Matrix, fld: CyclotomicField, ncols: int | None = None) -> int:
    return len(rref(rows, fld, ncols)[1])


def solve(a: Matrix, b: list, fld: CyclotomicField) -> list[Scalar]:
    """Some solution of ``a @ x = b``; raises if inconsistent."""
    n = len(a[0])
    aug = [list(r) + [fld.coerce(v)] for r, v in zip(a, b)]
    red, piv = rref(aug, fld, n + 1)
    if n in piv:
        raise SingularMatrixError("inconsistent linear system")
    x = [fld.zero] * n
    for r, p in zip(red, piv):
        x[p] = r[n]
    return x


def inverse(m: Matrix, fld: CyclotomicField) -> Matrix:
    n = len(m)
    aug = [list(r) + [fld.one if i == j else fld.zero for j in range(n)] for i, r in enumerate(m)]
    red, piv = rref(aug, fld, n)
    if piv != list(range(n)):
        raise SingularMatrixError("matrix is not invertible")
    return [r[n:] for r in red]


def matmul(a: Matrix, b: Matrix, fld: CyclotomicField) -> Matrix:
    cols = list(zip(*b))
    out = []
    for r in a:
        row = []
        for c in cols:
            acc = fld.zero
            for x, y in zip(r, c):
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out
