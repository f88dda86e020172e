"""Finite-dimensional Hopf algebras given by structure constants.

Index conventions (``d`` = dimension, ``b_0 .. b_{d-1}`` the basis):

* ``mult[i][j]`` lists ``(k, c)``: ``b_i b_j = sum c b_k``
* ``coproduct[i]`` lists ``((j, k), c)``: ``Delta(b_i) = sum c b_j (x) b_k``
* ``antipode[i]`` lists ``(j, c)``: ``s(b_i) = sum c b_j``
* ``rho`` lists ``((j, k), c)``: ``rho = sum c b_j (x) b_k``
* ``unit``, ``counit``, ``grouplike`` are dense tuples of Scalars.

Everything is stored sparsely; all checks are exact and run over basis
elements, which is enough by linearity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .field import CyclotomicField, FieldArray, Scalar

__all__ = [
    "HopfAlgebra",
    "AlgebraElement",
    "LinearFunctional",
    "AxiomResult",
    "AxiomReport",
    "AlgebraDataError",
    "check_hopf_axioms",
    "check_quasitriangular",
    "check_ribbon",
    "drinfeld_u",
    "right_integral",
    "trace_functional",
    "trace_report",
    "integral_report",
    "ribbon_element",
]


class AlgebraDataError(ValueError):
    """Structure constants are malformed or fail a required identity."""


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    witness: tuple | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class AxiomReport:
    results: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, name: str, witness=None, detail: str = "") -> AxiomResult:
        res = AxiomResult(name, witness is None, None if witness is None else tuple(witness), detail)
        self.results.append(res)
        return res

    def extend(self, other: "AxiomReport") -> "AxiomReport":
        self.results.extend(other.results)
        return self

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "results": [r.to_dict() for r in self.results]}

    def summary(self) -> str:
        lines = []
        for r in self.results:
            mark = "ok  " if r.passed else "FAIL"
            extra = f"  witness={list(r.witness)}" if r.witness is not None else ""
            if r.detail:
                extra += f"  ({r.detail})"
            lines.append(f"{mark} {r.name}{extra}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# sparse tensor helpers: dicts from index tuples to nonzero Scalars


def _acc(out: dict, key, c: Scalar):
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _first_diff(a: dict, b: dict):
    keys = sorted(set(a) | set(b))
    for k in keys:
        if a.get(k) != b.get(k):
            return k
    return None


class AlgebraElement:
    """Coefficient column over the basis of a :class:`HopfAlgebra`."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "HopfAlgebra", coeffs: Iterable):
        fld = algebra.field
        coeffs = tuple(fld.coerce(c) for c in coeffs)
        if len(coeffs) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} coefficients, got {len(coeffs)}")
        self.algebra = algebra
        self.coeffs = coeffs

    # sparse view
    def items(self):
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def _same(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgebraElement(self.algebra, (-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        c = self.algebra.field.coerce(other)
        return AlgebraElement(self.algebra, (a * c for a in self.coeffs))

    def __rmul__(self, other):
        c = self.algebra.field.coerce(other)
        return AlgebraElement(self.algebra, (a * c for a in self.coeffs))

    def __pow__(self, k: int):
        if k < 0:
            return self.algebra.inverse(self) ** (-k)
        out, base = self.algebra.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.algebra is self.algebra
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_strings(self) -> list:
        return [str(c) for c in self.coeffs]

    def __str__(self):
        terms = []
        for i, c in self.items():
            lab = self.algebra.labels[i]
            s = str(c)
            if s == "1":
                terms.append(lab)
            elif s == "-1":
                terms.append(f"-{lab}")
            elif " " in s:
                terms.append(f"({s})*{lab}")
            else:
                terms.append(f"{s}*{lab}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self):
        return f"AlgebraElement({self})"


class LinearFunctional:
    """Coefficient row; ``f(x) = sum f_i x_i``."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "HopfAlgebra", coeffs: Iterable):
        self.algebra = algebra
        self.coeffs = tuple(algebra.field.coerce(c) for c in coeffs)
        if len(self.coeffs) != algebra.dim:
            raise ValueError("functional has wrong length")

    def __call__(self, x: AlgebraElement) -> Scalar:
        acc = self.algebra.field.zero
        for i, c in x.items():
            if self.coeffs[i]:
                acc = acc + c * self.coeffs[i]
        return acc

    def on_basis(self, i: int) -> Scalar:
        return self.coeffs[i]

    def __eq__(self, other):
        return isinstance(other, LinearFunctional) and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def support(self) -> list:
        return [i for i, c in enumerate(self.coeffs) if c]

    def __repr__(self):
        return "LinearFunctional(" + ", ".join(
            f"{self.algebra.labels[i]}: {c}" for i, c in enumerate(self.coeffs) if c
        ) + ")"


# ---------------------------------------------------------------------------


class HopfAlgebra:
    """Structure constants of a finite-dimensional Hopf algebra over Q(zeta_n).

    Construction only checks shapes.  Use :func:`check_hopf_axioms` and
    friends for the algebraic identities.
    """

    def __init__(
        self,
        fld: CyclotomicField,
        labels: Sequence[str],
        mult: dict,
        unit: Sequence,
        coproduct: dict,
        counit: Sequence,
        antipode: dict,
        rho: dict | None = None,
        grouplike: Sequence | None = None,
        name: str = "",
    ):
        d = len(labels)
        if d == 0:
            raise AlgebraDataError("dimension must be positive")
        if len(set(labels)) != d:
            raise AlgebraDataError("basis labels must be distinct")
        self.field = fld
        self.dim = d
        self.labels = tuple(labels)
        self.name = name

        def _rng(*ix):
            for v in ix:
                if not (isinstance(v, (int, np.integer)) and 0 <= v < d):
                    raise AlgebraDataError(f"basis index {v!r} out of range for dim {d}")

        def _clean(entries: dict, arity: int) -> dict:
            out: dict = {}
            for key, c in entries.items():
                key = tuple(int(k) for k in (key if isinstance(key, tuple) else (key,)))
                if len(key) != arity:
                    raise AlgebraDataError(f"entry {key} should have {arity} indices")
                _rng(*key)
                _acc(out, key, fld.coerce(c))
            return out

        # flat dicts keyed by full index tuples
        self._m = _clean(mult, 3)
        self._D = _clean(coproduct, 3)
        self._S = _clean(antipode, 2)
        self._rho = None if rho is None else _clean(rho, 2)
        if len(unit) != d or len(counit) != d:
            raise AlgebraDataError("unit and counit need exactly dim entries")
        self.unit = AlgebraElement(self, unit)
        self.counit = LinearFunctional(self, counit)
        self.G = None if grouplike is None else AlgebraElement(self, grouplike)
        if grouplike is not None and len(grouplike) != d:
            raise AlgebraDataError("grouplike needs exactly dim entries")

        # row views
        self._mrow: dict = {}
        for (i, j, k), c in self._m.items():
            self._mrow.setdefault((i, j), []).append((k, c))
        self._Drow: dict = {}
        for (i, j, k), c in self._D.items():
            self._Drow.setdefault(i, []).append(((j, k), c))
        self._Srow: dict = {}
        for (i, j), c in self._S.items():
            self._Srow.setdefault(i, []).append((j, c))

    # basic data ---------------------------------------------------------

    @property
    def has_rho(self) -> bool:
        return self._rho is not None

    @property
    def rho(self) -> dict:
        if self._rho is None:
            raise AlgebraDataError("algebra has no R-matrix")
        return dict(self._rho)

    @property
    def one(self) -> AlgebraElement:
        return self.unit

    @property
    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, [self.field.zero] * self.dim)

    def basis(self, i: int) -> AlgebraElement:
        f = self.field
        return AlgebraElement(self, [f.one if k == i else f.zero for k in range(self.dim)])

    def element(self, coeffs) -> AlgebraElement:
        return AlgebraElement(self, coeffs)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def __repr__(self):
        return f"HopfAlgebra({self.name or 'anonymous'}, dim={self.dim}, n={self.field.n})"

    # element operations -------------------------------------------------

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        out = [self.field.zero] * self.dim
        for i, a in x.items():
            for j, b in y.items():
                row = self._mrow.get((i, j))
                if row:
                    ab = a * b
                    for k, c in row:
                        out[k] = out[k] + ab * c
        return AlgebraElement(self, out)

    def product(self, *xs: AlgebraElement) -> AlgebraElement:
        out = self.one
        for x in xs:
            out = out * x
        return out

    def antipode_of(self, x: AlgebraElement, power: int = 1) -> AlgebraElement:
        """``s^power(x)``; negative powers use the exact inverse antipode."""
        rows = self._Srow if power >= 0 else self._Sinv_rows
        for _ in range(abs(power)):
            out = [self.field.zero] * self.dim
            for i, a in x.items():
                for j, c in rows.get(i, ()):
                    out[j] = out[j] + a * c
            x = AlgebraElement(self, out)
        return x

    def counit_of(self, x: AlgebraElement) -> Scalar:
        return self.counit(x)

    def coproduct_of(self, x: AlgebraElement) -> dict:
        """``Delta(x)`` as a sparse dict ``{(j, k): coeff}``."""
        out: dict = {}
        for i, a in x.items():
            for key, c in self._Drow.get(i, ()):
                _acc(out, key, a * c)
        return out

    def coproduct_matrix(self, x: AlgebraElement) -> list:
        """Dense d x d coefficient matrix of ``Delta(x)``."""
        f = self.field
        m = [[f.zero] * self.dim for _ in range(self.dim)]
        for (j, k), c in self.coproduct_of(x).items():
            m[j][k] = c
        return m

    def left_mult_matrix(self, x: AlgebraElement) -> list:
        """Matrix M with ``(x b_j)_k = M[k][j]``."""
        cols = [(x * self.basis(j)).coeffs for j in range(self.dim)]
        return [list(r) for r in zip(*cols)]

    def inverse(self, x: AlgebraElement) -> AlgebraElement:
        """Two-sided inverse, found by solving ``x y = 1``."""
        try:
            y = linalg.solve(self.left_mult_matrix(x), list(self.unit.coeffs), self.field)
        except linalg.SingularMatrixError:
            raise AlgebraDataError(f"{x} is not invertible") from None
        y = AlgebraElement(self, y)
        if y * x != self.one:
            raise AlgebraDataError(f"{x} has a right inverse but no left inverse")
        return y

    def commutes(self, x: AlgebraElement, y: AlgebraElement) -> bool:
        return x * y == y * x

    # tensor powers --------------------------------------------------------

    def tensor_multiply(self, X: dict, Y: dict) -> dict:
        """Product in ``A^(x)r`` of sparse tensors keyed by r-tuples."""
        out: dict = {}
        for kx, a in X.items():
            for ky, b in Y.items():
                rows = []
                for i, j in zip(kx, ky):
                    row = self._mrow.get((i, j))
                    if not row:
                        break
                    rows.append(row)
                else:
                    ab = a * b
                    for combo in itertools.product(*rows):
                        c = ab
                        for _, cc in combo:
                            c = c * cc
                        _acc(out, tuple(k for k, _ in combo), c)
        return out

    def tensor_apply(self, X: dict, slot: int, rows: dict) -> dict:
        """Apply a linear map (sparse rows ``i -> [(j, c)]``) in one tensor slot."""
        out: dict = {}
        for key, a in X.items():
            for j, c in rows.get(key[slot], ()):
                _acc(out, key[:slot] + (j,) + key[slot + 1 :], a * c)
        return out

    def tensor_coproduct(self, X: dict, slot: int) -> dict:
        """Apply Delta in one slot (the tensor gains a factor)."""
        out: dict = {}
        for key, a in X.items():
            for (j, k), c in self._Drow.get(key[slot], ()):
                _acc(out, key[:slot] + (j, k) + key[slot + 1 :], a * c)
        return out

    def embed(self, X: dict, positions: Sequence[int], arity: int) -> dict:
        """Place the factors of X into the given slots of an arity-fold tensor, 1 elsewhere."""
        ones = self.unit.items()
        rest = [p for p in range(arity) if p not in positions]
        out: dict = {}
        for key, a in X.items():
            for fill in itertools.product(ones, repeat=len(rest)):
                full = [None] * arity
                for p, k in zip(positions, key):
                    full[p] = k
                c = a
                for p, (k, u) in zip(rest, fill):
                    full[p] = k
                    c = c * u
                _acc(out, tuple(full), c)
        return out

    @staticmethod
    def tensor_permute(X: dict, perm: Sequence[int]) -> dict:
        """Output slot ``p`` takes input slot ``perm[p]``."""
        return {tuple(key[p] for p in perm): c for key, c in X.items()}

    # derived maps ---------------------------------------------------------

    @cached_property
    def _Sinv_rows(self) -> dict:
        f = self.field
        mat = [[f.zero] * self.dim for _ in range(self.dim)]
        for (i, j), c in self._S.items():
            mat[i][j] = c
        try:
            inv = linalg.inverse(mat, f)
        except linalg.SingularMatrixError:
            raise AlgebraDataError("antipode is not invertible") from None
        rows: dict = {}
        for i in range(self.dim):
            for j in range(self.dim):
                if inv[i][j]:
                    rows.setdefault(i, []).append((j, inv[i][j]))
        return rows

    def antipode_rows(self, power: int = 1) -> dict:
        """Sparse rows of ``s^power``."""
        out = {}
        for i in range(self.dim):
            v = self.antipode_of(self.basis(i), power)
            r = v.items()
            if r:
                out[i] = r
        return out

    # dense views used by the contraction engine --------------------------

    @cached_property
    def dense(self) -> "DenseStructure":
        return DenseStructure(self)


class DenseStructure:
    """Dense FieldArray copies of the structure tensors (built on demand)."""

    def __init__(self, alg: HopfAlgebra):
        self.algebra = alg
        f, d = alg.field, alg.dim
        self.mult = _dense(f, (d, d, d), alg._m)
        self.coproduct = _dense(f, (d, d, d), alg._D)
        self.unit = FieldArray.from_scalars(f, list(alg.unit.coeffs))
        self._spow: dict = {}

    def antipode_power(self, k: int) -> FieldArray:
        """Matrix ``S[i, j]`` = coefficient of ``b_j`` in ``s^k(b_i)``."""
        if k not in self._spow:
            alg = self.algebra
            self._spow[k] = _dense(
                alg.field,
                (alg.dim, alg.dim),
                {(i, j): c for i, row in alg.antipode_rows(k).items() for j, c in row},
            )
        return self._spow[k]


def _dense(fld, shape, entries: dict) -> FieldArray:
    vals = np.empty(shape, dtype=object)
    vals[...] = fld.zero
    for key, c in entries.items():
        vals[key] = c
    return FieldArray.from_scalars(fld, vals)


# ---------------------------------------------------------------------------
# axiom checks


def _basis_elems(alg):
    return [alg.basis(i) for i in range(alg.dim)]


def check_hopf_axioms(alg: HopfAlgebra) -> AxiomReport:
    """Associativity, unit, coassociativity, counit, bialgebra and antipode laws."""
    rep = AxiomReport()
    d, f = alg.dim, alg.field
    B = _basis_elems(alg)
    prods = [[B[i] * B[j] for j in range(d)] for i in range(d)]

    w = None
    for i, j, k in itertools.product(range(d), repeat=3):
        if prods[i][j] * B[k] != B[i] * prods[j][k]:
            w = (i, j, k)
            break
    rep.add("associativity", w)

    w = None
    for i in range(d):
        if alg.one * B[i] != B[i] or B[i] * alg.one != B[i]:
            w = (i,)
            break
    rep.add("unit", w)

    w = None
    for i in range(d):
        X = {(i,): f.one}
        D1 = alg.tensor_coproduct(X, 0)
        if alg.tensor_coproduct(D1, 0) != alg.tensor_coproduct(D1, 1):
            w = (i,)
            break
    rep.add("coassociativity", w)

    w = None
    eps = alg.counit
    for i in range(d):
        left = [f.zero] * d
        right = [f.zero] * d
        for (j, k), c in alg._Drow.get(i, ()):
            left[k] = left[k] + eps.on_basis(j) * c
            right[j] = right[j] + eps.on_basis(k) * c
        if AlgebraElement(alg, left) != B[i] or AlgebraElement(alg, right) != B[i]:
            w = (i,)
            break
    rep.add("counit", w)

    w = None
    cop = [alg.coproduct_of(b) for b in B]
    for i, j in itertools.product(range(d), repeat=2):
        if alg.coproduct_of(prods[i][j]) != alg.tensor_multiply(cop[i], cop[j]):
            w = (i, j)
            break
    if w is None and alg.coproduct_of(alg.one) != alg.embed({(): f.one}, [], 2):
        w = ("unit",)
    rep.add("coproduct is an algebra map", w)

    w = None
    for i, j in itertools.product(range(d), repeat=2):
        if eps(prods[i][j]) != eps.on_basis(i) * eps.on_basis(j):
            w = (i, j)
            break
    if w is None and eps(alg.one) != f.one:
        w = ("unit",)
    rep.add("counit is an algebra map", w)

    w = None
    S = alg._Srow
    for i in range(d):
        lhs = [f.zero] * d
        rhs = [f.zero] * d
        for (a, b), c in cop[i].items():
            sa = AlgebraElement(alg, _row_vec(f, d, S.get(a, ())))
            sb = AlgebraElement(alg, _row_vec(f, d, S.get(b, ())))
            x = (B[a] * sb) * c
            y = (sa * B[b]) * c
            lhs = [p + q for p, q in zip(lhs, x.coeffs)]
            rhs = [p + q for p, q in zip(rhs, y.coeffs)]
        target = alg.one * eps.on_basis(i)
        if AlgebraElement(alg, lhs) != target or AlgebraElement(alg, rhs) != target:
            w = (i,)
            break
    rep.add("antipode", w)

    w = None
    sB = [alg.antipode_of(b) for b in B]
    for i, j in itertools.product(range(d), repeat=2):
        if alg.antipode_of(prods[i][j]) != sB[j] * sB[i]:
            w = (i, j)
            break
    rep.add("antipode is an anti-homomorphism", w)

    try:
        _ = alg._Sinv_rows
        rep.add("antipode is invertible")
    except AlgebraDataError:
        rep.add("antipode is invertible", ())
    return rep


def _row_vec(f, d, row):
    v = [f.zero] * d
    for j, c in row:
        v[j] = v[j] + c
    return v


def _rho_inverse_candidate(alg) -> dict:
    """``(s (x) 1) rho``."""
    return alg.tensor_apply(alg.rho, 0, alg._Srow)


def check_quasitriangular(alg: HopfAlgebra) -> AxiomReport:
    """``rho Delta = Delta' rho``, the two coproduct expansions, Yang-Baxter, and rho^-1."""
    rep = AxiomReport()
    if not alg.has_rho:
        raise AlgebraDataError("algebra has no R-matrix")
    f, d = alg.field, alg.dim
    rho = alg.rho

    w = None
    for i in range(d):
        D = alg.coproduct_of(alg.basis(i))
        Dop = alg.tensor_permute(D, (1, 0))
        if alg.tensor_multiply(rho, D) != alg.tensor_multiply(Dop, rho):
            w = (i,)
            break
    rep.add("rho Delta = Delta' rho", w)

    r12 = alg.embed(rho, (0, 1), 3)
    r13 = alg.embed(rho, (0, 2), 3)
    r23 = alg.embed(rho, (1, 2), 3)

    lhs = alg.tensor_coproduct(rho, 1)
    rhs = alg.tensor_multiply(r13, r12)
    k = _first_diff(lhs, rhs)
    rep.add("(1 (x) Delta) rho = rho13 rho12", k)

    lhs = alg.tensor_coproduct(rho, 0)
    rhs = alg.tensor_multiply(r13, r23)
    k = _first_diff(lhs, rhs)
    rep.add("(Delta (x) 1) rho = rho13 rho23", k)

    lhs = alg.tensor_multiply(alg.tensor_multiply(r12, r13), r23)
    rhs = alg.tensor_multiply(alg.tensor_multiply(r23, r13), r12)
    rep.add("Yang-Baxter", _first_diff(lhs, rhs))

    try:
        inv1 = _rho_inverse_candidate(alg)
        inv2 = alg.tensor_apply(rho, 1, alg._Sinv_rows)
        one2 = alg.embed({(): f.one}, [], 2)
        ok = (
            alg.tensor_multiply(rho, inv1) == one2
            and alg.tensor_multiply(inv1, rho) == one2
        )
        rep.add("rho^-1 = (s (x) 1) rho", None if ok else ("inverse",))
        rep.add("(1 (x) s^-1) rho = (s (x) 1) rho", _first_diff(inv1, inv2))
    except AlgebraDataError:
        rep.add("rho^-1 = (s (x) 1) rho", ("antipode not invertible",))
    return rep


def drinfeld_u(alg: HopfAlgebra) -> AlgebraElement:
    """``u = sum s(e') e`` for ``rho = sum e (x) e'``; checks ``s^2(x) = u x u^-1``."""
    f, d = alg.field, alg.dim
    u = alg.zero
    for (j, k), c in alg.rho.items():
        u = u + (alg.antipode_of(alg.basis(k)) * alg.basis(j)) * c
    uinv = alg.inverse(u)
    for i in range(d):
        b = alg.basis(i)
        if alg.antipode_of(b, 2) != u * b * uinv:
            raise AlgebraDataError(f"s^2(x) != u x u^-1 at basis element {alg.labels[i]}")
    return u


def check_ribbon(alg: HopfAlgebra) -> AxiomReport:
    """Grouplike G, centrality of v = G^-1 u, ``s(u) = G^-1 u G^-1``, ``s^2 = Ad G``, ``s(v) = v``."""
    rep = AxiomReport()
    if alg.G is None:
        raise AlgebraDataError("algebra has no grouplike element G")
    f, d = alg.field, alg.dim
    G = alg.G
    DG = alg.coproduct_of(G)
    GxG = {(i, j): a * b for i, a in G.items() for j, b in G.items()}
    grouplike = DG == {k: v for k, v in GxG.items() if v} and alg.counit(G) == f.one
    rep.add("G grouplike", None if grouplike else ("Delta(G)",))
    try:
        Ginv = alg.inverse(G)
    except AlgebraDataError:
        rep.add("G invertible", ("G",))
        return rep
    try:
        u = drinfeld_u(alg)
        rep.add("s^2(x) = u x u^-1")
    except AlgebraDataError as exc:
        rep.add("s^2(x) = u x u^-1", ("u",), str(exc))
        return rep
    v = Ginv * u
    w = next((i for i in range(d) if not alg.commutes(v, alg.basis(i))), None)
    rep.add("v = G^-1 u central", None if w is None else (w,))
    rep.add("s(u) = G^-1 u G^-1", None if alg.antipode_of(u) == Ginv * u * Ginv else ("u",))
    w = next(
        (i for i in range(d) if alg.antipode_of(alg.basis(i), 2) != G * alg.basis(i) * Ginv),
        None,
    )
    rep.add("s^2(x) = G x G^-1", None if w is None else (w,))
    rep.add("s(v) = v", None if alg.antipode_of(v) == v else ("v",))
    return rep


def ribbon_element(alg: HopfAlgebra) -> AlgebraElement:
    """``v = G^-1 u``."""
    return alg.inverse(alg.G) * drinfeld_u(alg)


def right_integral(alg: HopfAlgebra, check: bool = True) -> LinearFunctional:
    """The right integral, scaled so its first nonzero coefficient is 1.

    Solves ``lambda(x) 1 = sum lambda(x_1) x_2`` on basis elements.  Raises
    :class:`AlgebraDataError` when the solution space is not one-dimensional.
    """
    f, d = alg.field, alg.dim
    rows = []
    unit = alg.unit.coeffs
    for i in range(d):
        eq = [[f.zero] * d for _ in range(d)]  # eq[k][j] coefficient of lambda_j
        for (j, k), c in alg._Drow.get(i, ()):
            eq[k][j] = eq[k][j] + c
        for k in range(d):
            if unit[k]:
                eq[k][i] = eq[k][i] - unit[k]
        rows.extend(r for r in eq if any(r))
    ns = linalg.nullspace(rows, f, d) if rows else [[f.one if k == j else f.zero for k in range(d)] for j in range(d)]
    if len(ns) == 0:
        raise AlgebraDataError("no nonzero right integral")
    if len(ns) > 1:
        raise AlgebraDataError(f"right integral space has dimension {len(ns)}")
    vec = ns[0]
    lead = next(c for c in vec if c)
    return LinearFunctional(alg, [c / lead for c in vec])


def integral_report(alg: HopfAlgebra, lam: LinearFunctional) -> AxiomReport:
    """Properties ``lambda(xy) = lambda(s^2(y) x)`` and ``lambda(g x) = lambda(s(x))`` with g = G^2."""
    rep = AxiomReport()
    d = alg.dim
    B = _basis_elems(alg)
    s2 = [alg.antipode_of(b, 2) for b in B]
    w = next(
        ((i, j) for i in range(d) for j in range(d) if lam(B[i] * B[j]) != lam(s2[j] * B[i])),
        None,
    )
    rep.add("lambda(xy) = lambda(s^2(y) x)", w)
    if alg.G is not None:
        g = alg.G * alg.G
        w = next((i for i in range(d) if lam(g * B[i]) != lam(alg.antipode_of(B[i]))), None)
        rep.add("lambda(g x) = lambda(s(x))", None if w is None else (w,))
    return rep


def trace_functional(alg: HopfAlgebra, lam: LinearFunctional | None = None) -> LinearFunctional:
    """``tr(x) = lambda(G x)``."""
    if lam is None:
        lam = right_integral(alg)
    if alg.G is None:
        raise AlgebraDataError("algebra has no grouplike element G")
    return LinearFunctional(alg, [lam(alg.G * alg.basis(i)) for i in range(alg.dim)])


def trace_report(alg: HopfAlgebra, tr: LinearFunctional) -> AxiomReport:
    rep = AxiomReport()
    d = alg.dim
    B = _basis_elems(alg)
    w = next(
        ((i, j) for i in range(d) for j in range(i + 1, d) if tr(B[i] * B[j]) != tr(B[j] * B[i])),
        None,
    )
    rep.add("tr(xy) = tr(yx)", w)
    w = next((i for i in range(d) if tr(alg.antipode_of(B[i])) != tr(B[i])), None)
    rep.add("tr(s(x)) = tr(x)", None if w is None else (w,))
    return rep


def with_structure(alg: HopfAlgebra, rho="keep", grouplike="keep", name=None) -> HopfAlgebra:
    """Copy of ``alg`` with a different R-matrix and/or grouplike."""
    return HopfAlgebra(
        alg.field,
        alg.labels,
        alg._m,
        alg.unit.coeffs,
        alg._D,
        alg.counit.coeffs,
        alg._S,
        rho=alg._rho if rho == "keep" else rho,
        grouplike=(None if alg.G is None else alg.G.coeffs) if isinstance(grouplike, str) else grouplike,
        name=alg.name if name is None else name,
    )
