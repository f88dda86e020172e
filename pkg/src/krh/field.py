"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are stored as coefficient vectors over the power basis
1, q, ..., q^(phi(n)-1), reduced modulo the n-th cyclotomic polynomial.
``n = 1`` gives the rationals.

Two representations are provided:

* :class:`Scalar` -- a single immutable field element (tuple of Fractions).
* :class:`FieldArray` -- a dense tensor of field elements stored as Python
  integer numerators with one shared denominator.  The trailing axis of the
  numerator array is the coefficient axis.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CyclotomicField",
    "Scalar",
    "FieldArray",
    "ScalarParseError",
    "cyclotomic_polynomial",
    "field",
    "tensordot",
    "einsum",
]


class ScalarParseError(ValueError):
    """Malformed scalar text."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, lowest degree first)


def _poly_trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    """Division by a polynomial with unit or rational leading coefficient."""
    a = [Fraction(x) for x in a]
    b = _poly_trim([Fraction(x) for x in b])
    if len(a) < len(b):
        return [Fraction(0)], _poly_trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _poly_trim(q), _poly_trim(a[: len(b) - 1] or [Fraction(0)])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(num, cyclotomic_polynomial(d))
            assert all(x == 0 for x in r)
            num = q
    assert all(x.denominator == 1 for x in num)
    return tuple(int(x) for x in num)


# ---------------------------------------------------------------------------


class CyclotomicField:
    """The field Q(zeta_n); one shared instance per order (see :func:`field`)."""

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"cyclotomic order must be a positive integer, got {n!r}")
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.phi = len(self.modulus) - 1
        # reduced power basis images of q^k for 0 <= k < max(n, 2 phi)
        top = max(n, 2 * self.phi)
        powers = []
        cur = [1] + [0] * (self.phi - 1)
        for _ in range(top):
            powers.append(tuple(cur))
            cur = self._times_q(cur)
        self._powers = powers
        table = np.zeros((self.phi, self.phi, self.phi), dtype=np.int64)
        for a in range(self.phi):
            for b in range(self.phi):
                table[a, b, :] = powers[a + b]
        self.mult_table = table
        self._table_obj = table.astype(object)
        self.zero = Scalar(self, (Fraction(0),) * self.phi)
        self.one = Scalar(self, (Fraction(1),) + (Fraction(0),) * (self.phi - 1))

    def _times_q(self, c):
        # multiply a reduced coefficient list by q and reduce once
        out = [0] + list(c)
        lead = out.pop()
        if lead:
            for i in range(self.phi):
                out[i] -= lead * self.modulus[i]
        return out

    def __repr__(self):
        return f"CyclotomicField({self.n})"

    def __reduce__(self):
        return (field, (self.n,))

    # constructors -------------------------------------------------------

    def power(self, k: int) -> "Scalar":
        """zeta^k for any integer k."""
        return Scalar(self, tuple(Fraction(x) for x in self._powers[k % self.n]))

    @property
    def zeta(self) -> "Scalar":
        return self.power(1)

    def __call__(self, value) -> "Scalar":
        return self.coerce(value)

    def coerce(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self:
                raise ValueError(f"scalar over {value.field} used in {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction)):
            return Scalar(self, (Fraction(value),) + (Fraction(0),) * (self.phi - 1))
        if isinstance(value, (np.integer,)):
            return self.coerce(int(value))
        raise TypeError(f"cannot convert {type(value).__name__} to a field element")

    def from_poly(self, coeffs: Sequence) -> "Scalar":
        """Reduce an arbitrary-length coefficient list modulo Phi_n."""
        out = [Fraction(0)] * self.phi
        for k, c in enumerate(coeffs):
            if c:
                img = self._powers[k % self.n]
                c = Fraction(c)
                for i, x in enumerate(img):
                    if x:
                        out[i] += c * x
        return Scalar(self, tuple(out))

    # text ---------------------------------------------------------------

    _TERM = re.compile(
        r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?
        (?:(?P<var>[a-z])\s*(?:\^\s*(?P<exp>[+-]?\d+))?)?\s*""",
        re.VERBOSE,
    )

    def parse(self, text: str) -> "Scalar":
        """Parse ``"1/2"``, ``"-3*q^2 + 1"``, ``"i"`` (n = 4 only)..."""
        if not isinstance(text, str):
            raise ScalarParseError(f"expected a string, got {type(text).__name__}")
        src = text.strip()
        if not src:
            raise ScalarParseError("empty scalar")
        pos = 0
        coeffs: dict[int, Fraction] = {}
        first = True
        while pos < len(src):
            m = self._TERM.match(src, pos)
            if m is None or m.end() == pos:
                raise ScalarParseError(f"malformed scalar {text!r} at offset {pos}")
            sign, coef, star, var = m.group("sign"), m.group("coef"), m.group("star"), m.group("var")
            if sign is None and not first:
                raise ScalarParseError(f"missing operator in {text!r} at offset {pos}")
            if coef is None and var is None:
                raise ScalarParseError(f"malformed scalar {text!r} at offset {pos}")
            if star and var is None:
                raise ScalarParseError(f"dangling '*' in {text!r}")
            if var is None and m.group("exp") is not None:
                raise ScalarParseError(f"malformed scalar {text!r}")
            c = Fraction(coef) if coef is not None else Fraction(1)
            if sign == "-":
                c = -c
            k = 0
            if var is not None:
                if var == "q":
                    pass
                elif var == "i":
                    if self.n != 4:
                        raise ScalarParseError(f"'i' is only allowed over Q(zeta_4), not n={self.n}")
                else:
                    raise ScalarParseError(f"unknown symbol {var!r} in {text!r}")
                k = int(m.group("exp")) if m.group("exp") is not None else 1
            coeffs[k % self.n] = coeffs.get(k % self.n, Fraction(0)) + c
            pos = m.end()
            first = False
        poly = [Fraction(0)] * self.n
        for k, c in coeffs.items():
            poly[k] += c
        return self.from_poly(poly)


@lru_cache(maxsize=None)
def field(n: int) -> CyclotomicField:
    """Shared :class:`CyclotomicField` instance for ``n``."""
    return CyclotomicField(n)


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Scalar:
    """Immutable element of Q(zeta_n) in canonical reduced form."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, fld: CyclotomicField, coeffs: Iterable):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != fld.phi:
            raise ValueError(f"expected {fld.phi} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.field, self.coeffs))

    # coercion -----------------------------------------------------------

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ValueError("scalars from different fields")
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return self.field.coerce(other)
        return NotImplemented

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, (a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, (-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, (a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        if f.phi == 1:
            return Scalar(f, (self.coeffs[0] * o.coeffs[0],))
        prod = [Fraction(0)] * (2 * f.phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return f.from_poly(prod)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_n."""
        if not self:
            raise ZeroDivisionError("inverse of zero in the cyclotomic field")
        f = self.field
        # invariant: s_i * self == r_i (mod Phi_n)
        r0, r1 = [Fraction(x) for x in f.modulus], _poly_trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _poly_divmod(r0, r1)
            qs = _poly_mul(q, s1)
            width = max(len(s0), len(qs))
            s2 = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(width)]
            r0, r1, s0, s1 = r1, r, s1, _poly_trim(s2)
        # r0 is a nonzero constant since Phi_n is irreducible
        assert len(r0) == 1 and r0[0] != 0
        return f.from_poly([c / r0[0] for c in s0])

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        o = self._other(other) if not isinstance(other, Scalar) or other.field is self.field else None
        if o is None or o is NotImplemented:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field.n, self.coeffs)))
        return self._hash

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # text ---------------------------------------------------------------

    def __str__(self):
        terms = []
        for k in range(self.field.phi - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = _fmt_rat(mag)
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if mag == 1 else f"{_fmt_rat(mag)}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Scalar({str(self)!r}, n={self.field.n})"


# ---------------------------------------------------------------------------
# dense tensors


def _gcd_all(arr) -> int:
    flat = [int(x) for x in np.asarray(arr, dtype=object).ravel() if x]
    return reduce(math.gcd, flat, 0)


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


class FieldArray:
    """Dense tensor over Q(zeta_n): integer numerators plus one denominator.

    ``num`` has shape ``shape + (phi,)`` with Python-int entries; the value
    at an index is ``Scalar(num[index, :] / den)``.  Instances are treated
    as immutable and are kept in lowest terms.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, fld: CyclotomicField, num, den: int = 1, *, normalize: bool = True):
        num = np.asarray(num, dtype=object)
        if num.ndim == 0 or num.shape[-1] != fld.phi:
            raise ValueError(f"numerator array must end with a coefficient axis of length {fld.phi}")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        if normalize and den != 1:
            g = math.gcd(_gcd_all(num), den)
            if g > 1:
                num = num // g
                den //= g
        self.field = fld
        self.num = num
        self.den = den

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, fld: CyclotomicField, shape) -> "FieldArray":
        shape = tuple(shape) if not isinstance(shape, int) else (shape,)
        num = np.zeros(shape + (fld.phi,), dtype=object)
        num[...] = 0
        return cls(fld, num, 1, normalize=False)

    @classmethod
    def from_scalars(cls, fld: CyclotomicField, values) -> "FieldArray":
        """Build from a (nested) array-like of Scalars / ints / Fractions / strings."""
        arr = np.empty(np.shape(values) if not isinstance(values, np.ndarray) else values.shape, dtype=object)
        src = np.asarray(values, dtype=object) if not isinstance(values, np.ndarray) else values
        arr[...] = src
        coerced = [fld.coerce(v) for v in arr.ravel()]
        den = 1
        for s in coerced:
            for c in s.coeffs:
                den = _lcm(den, c.denominator)
        num = np.empty((len(coerced), fld.phi), dtype=object)
        for r, s in enumerate(coerced):
            for k, c in enumerate(s.coeffs):
                num[r, k] = c.numerator * (den // c.denominator)
        return cls(fld, num.reshape(arr.shape + (fld.phi,)), den)

    @classmethod
    def from_rational(cls, fld: CyclotomicField, values) -> "FieldArray":
        """Embed an array of ints/Fractions as field constants."""
        src = np.asarray(values, dtype=object)
        den = 1
        for v in src.ravel():
            den = _lcm(den, Fraction(v).denominator)
        num = np.zeros(src.shape + (fld.phi,), dtype=object)
        num[...] = 0
        flat = num.reshape(-1, fld.phi)
        for r, v in enumerate(src.ravel()):
            v = Fraction(v)
            flat[r, 0] = v.numerator * (den // v.denominator)
        return cls(fld, num, den)

    @classmethod
    def basis_vector(cls, fld: CyclotomicField, dim: int, i: int) -> "FieldArray":
        out = cls.zeros(fld, (dim,))
        num = out.num.copy()
        num[i, 0] = 1
        return cls(fld, num, 1, normalize=False)

    @classmethod
    def identity(cls, fld: CyclotomicField, dim: int) -> "FieldArray":
        num = np.zeros((dim, dim, fld.phi), dtype=object)
        num[...] = 0
        for i in range(dim):
            num[i, i, 0] = 1
        return cls(fld, num, 1, normalize=False)

    # shape --------------------------------------------------------------

    @property
    def shape(self) -> tuple:
        return self.num.shape[:-1]

    @property
    def ndim(self) -> int:
        return self.num.ndim - 1

    def transpose(self, *axes) -> "FieldArray":
        if len(axes) == 1 and isinstance(axes[0], (tuple, list)):
            axes = tuple(axes[0])
        if not axes:
            axes = tuple(reversed(range(self.ndim)))
        return FieldArray(self.field, self.num.transpose(tuple(axes) + (self.ndim,)), self.den, normalize=False)

    @property
    def T(self) -> "FieldArray":
        return self.transpose()

    def reshape(self, *shape) -> "FieldArray":
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return FieldArray(self.field, self.num.reshape(tuple(shape) + (self.field.phi,)), self.den, normalize=False)

    def __getitem__(self, idx):
        if not isinstance(idx, tuple):
            idx = (idx,)
        sub = self.num[idx]
        if sub.ndim == 1:
            return Scalar(self.field, (Fraction(int(c), self.den) for c in sub))
        return FieldArray(self.field, sub, self.den)

    def scalar(self, *idx) -> Scalar:
        return self[tuple(idx)]

    def to_scalars(self):
        """Nested lists of Scalars."""
        flat = self.num.reshape(-1, self.field.phi)
        vals = [Scalar(self.field, (Fraction(int(c), self.den) for c in row)) for row in flat]
        out = np.empty(len(vals), dtype=object)
        for k, v in enumerate(vals):
            out[k] = v
        return out.reshape(self.shape).tolist() if self.shape else vals[0]

    def nonzero_indices(self):
        """Index tuples with a nonzero entry, in C order."""
        mask = np.array([[bool(c) for c in row] for row in self.num.reshape(-1, self.field.phi)], dtype=bool)
        hits = np.flatnonzero(mask.any(axis=1)) if mask.size else np.array([], dtype=int)
        return [tuple(int(i) for i in np.unravel_index(h, self.shape)) for h in hits]

    def is_zero(self) -> bool:
        return not any(self.num.ravel())

    def with_entry(self, idx, value) -> "FieldArray":
        """Copy with one entry replaced."""
        value = self.field.coerce(value)
        den = self.den
        for c in value.coeffs:
            den = _lcm(den, c.denominator)
        num = self.num * (den // self.den)
        num[tuple(idx)] = [c.numerator * (den // c.denominator) for c in value.coeffs]
        return FieldArray(self.field, num, den)

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "FieldArray"):
        if other.field is not self.field:
            raise ValueError("arrays over different fields")

    def __add__(self, other: "FieldArray") -> "FieldArray":
        self._check(other)
        den = _lcm(self.den, other.den)
        return FieldArray(self.field, self.num * (den // self.den) + other.num * (den // other.den), den)

    def __sub__(self, other: "FieldArray") -> "FieldArray":
        return self + (-other)

    def __neg__(self) -> "FieldArray":
        return FieldArray(self.field, -self.num, self.den, normalize=False)

    def scale(self, c) -> "FieldArray":
        """Multiply every entry by a field element."""
        c = self.field.coerce(c)
        den = 1
        for x in c.coeffs:
            den = _lcm(den, x.denominator)
        cnum = np.array([x.numerator * (den // x.denominator) for x in c.coeffs], dtype=object)
        num = np.tensordot(self.num, cnum.reshape(1, -1), axes=0)  # shape + (phi, 1, phi)
        num = num.reshape(self.num.shape + (self.field.phi,))
        num = np.tensordot(num, self.field._table_obj, axes=([-2, -1], [0, 1]))
        return FieldArray(self.field, num, self.den * den)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FieldArray) or other.field is not self.field:
            return False
        if self.shape != other.shape:
            return False
        return self.den == other.den and bool(np.all(self.num == other.num))

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def first_difference(self, other: "FieldArray"):
        """First index (C order) where two equal-shape arrays differ, or None."""
        diff = self - other
        hits = diff.nonzero_indices()
        return hits[0] if hits else None

    def __repr__(self):
        return f"FieldArray(shape={self.shape}, n={self.field.n}, den={self.den})"


def tensordot(a: FieldArray, b: FieldArray, axes) -> FieldArray:
    """Field-aware ``numpy.tensordot`` (field multiplication on the coefficient axis)."""
    a._check(b)
    fld = a.field
    ax_a, ax_b = axes
    if isinstance(ax_a, int):
        ax_a, ax_b = [ax_a], [ax_b]
    ax_a = [x % a.ndim for x in ax_a]
    ax_b = [x % b.ndim for x in ax_b]
    raw = np.tensordot(a.num, b.num, axes=(ax_a, ax_b))
    # raw axes: a_free..., fa, b_free..., fb
    na = a.ndim - len(ax_a)
    nb = b.ndim - len(ax_b)
    if fld.phi == 1:
        num = raw.reshape(raw.shape[:na] + raw.shape[na + 1 : na + 1 + nb] + (1,))
    else:
        order = list(range(na)) + list(range(na + 1, na + 1 + nb)) + [na, na + 1 + nb]
        raw = raw.transpose(order)
        num = np.tensordot(raw, fld._table_obj, axes=([-2, -1], [0, 1]))
    return FieldArray(fld, num, a.den * b.den)


def einsum(spec: str, *ops: FieldArray) -> FieldArray:
    """Field-aware einsum for explicit ``'ab,bc->ac'`` specs, contracted pairwise left to right.

    Every contracted label must be shared by exactly the operands being
    merged at that step; labels that survive to the output are kept.
    """
    lhs, out = spec.replace(" ", "").split("->")
    terms = lhs.split(",")
    if len(terms) != len(ops):
        raise ValueError("operand count does not match spec")
    cur, cur_lab = ops[0], terms[0]
    for pos, (lab, op) in enumerate(zip(terms[1:], ops[1:]), start=1):
        # labels needed after this step: the output plus any later operand
        rest = set(out)
        for t in terms[pos + 1 :]:
            rest |= set(t)
        shared = [c for c in cur_lab if c in lab]
        summed = [c for c in shared if c not in rest]
        kept_shared = [c for c in shared if c in rest]
        if kept_shared:
            # keep a shared label alive: take a diagonal via an identity-free trick
            raise ValueError(f"label(s) {kept_shared} shared but not summed; split the contraction")
        cur = tensordot(cur, op, (tuple(cur_lab.index(c) for c in summed), tuple(lab.index(c) for c in summed)))
        cur_lab = "".join(c for c in cur_lab if c not in summed) + "".join(c for c in lab if c not in summed)
    if sorted(cur_lab) != sorted(out):
        raise ValueError(f"labels {cur_lab!r} left over for output {out!r}")
    return cur.transpose(tuple(cur_lab.index(c) for c in out))
