"""Builtin ribbon Hopf algebras and generic constructions.

``group_Zn:<n>``
    the group algebra of Z/n over Q with rho = 1 (x) 1 and G = 1.
``sweedler_h4``
    Sweedler's four-dimensional algebra with its standard R-matrix and G = g.
``uq_sl2_prime_q4``
    a 16-dimensional ribbon quotient of the Drinfeld double of the
    eight-dimensional Borel part (K^4 = 1, E^2 = 0, KE = -EK) over Q(i).
    The structure constants ship as ``data/uq_sl2_prime_q4.json`` and can be
    regenerated with :func:`build_uq_sl2_prime_q4`.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from . import linalg
from .field import CyclotomicField, field
from .hopf import AlgebraDataError, HopfAlgebra, _acc

__all__ = [
    "builtin_algebra",
    "builtin_names",
    "group_algebra",
    "sweedler_h4",
    "borel_algebra",
    "drinfeld_double",
    "quotient_by_grouplike",
    "build_uq_sl2_prime_q4",
]


def builtin_names() -> list:
    return ["group_Zn:2", "group_Zn:3", "group_Zn:4", "group_Zn:5", "group_Zn:6", "sweedler_h4", "uq_sl2_prime_q4"]


@lru_cache(maxsize=None)
def builtin_algebra(name: str) -> HopfAlgebra:
    """Look up a builtin algebra by name (``group_Zn:<n>``, ``sweedler_h4``, ``uq_sl2_prime_q4``)."""
    if name.startswith("group_Zn:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise KeyError(f"bad group order in {name!r}") from None
        if n < 1:
            raise KeyError(f"bad group order in {name!r}")
        return group_algebra(n)
    if name == "sweedler_h4":
        return sweedler_h4()
    if name == "uq_sl2_prime_q4":
        from .algebra_io import load_algebra_text

        text = resources.files("krh").joinpath("data/uq_sl2_prime_q4.json").read_text()
        return load_algebra_text(text, name=name)
    raise KeyError(f"unknown builtin algebra {name!r}")


def group_algebra(n: int, order: int = 1) -> HopfAlgebra:
    """k[Z/n] with trivial R-matrix and G = 1."""
    fld = field(order)
    labels = ["1"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    mult = {(a, b, (a + b) % n): 1 for a in range(n) for b in range(n)}
    cop = {(a, a, a): 1 for a in range(n)}
    anti = {(a, (-a) % n): 1 for a in range(n)}
    unit = [1] + [0] * (n - 1)
    return HopfAlgebra(
        fld, labels, mult, unit, cop, [1] * n, anti,
        rho={(0, 0): 1}, grouplike=unit, name=f"group_Zn:{n}",
    )


def sweedler_h4() -> HopfAlgebra:
    """Basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x (x) g + 1 (x) x."""
    fld = field(1)
    labels = ["1", "g", "x", "gx"]

    def ix(a, b):
        return a + 2 * b

    mult = {}
    for a, b, c, d in itertools.product(range(2), repeat=4):
        if b + d < 2:
            mult[(ix(a, b), ix(c, d), ix((a + c) % 2, b + d))] = (-1) ** (b * c)
    cop = {(0, 0, 0): 1, (1, 1, 1): 1, (2, 2, 1): 1, (2, 0, 2): 1, (3, 3, 0): 1, (3, 1, 3): 1}
    anti = {(0, 0): 1, (1, 1): 1, (2, 3): 1, (3, 2): -1}
    h = Fraction(1, 2)
    rho = {
        (0, 0): h, (0, 1): h, (1, 0): h, (1, 1): -h,
        (2, 2): h, (2, 3): h, (3, 2): -h, (3, 3): h,
    }
    return HopfAlgebra(
        fld, labels, mult, [1, 0, 0, 0], cop, [1, 1, 0, 0], anti,
        rho=rho, grouplike=[0, 1, 0, 0], name="sweedler_h4",
    )


def borel_algebra(N: int = 4, order: int = 4) -> HopfAlgebra:
    """K^N = 1, E^2 = 0, KE = -EK, Delta(E) = E (x) K + 1 (x) E (no R-matrix).

    Basis ``K^a E^b``.  ``N`` must be even.
    """
    if N % 2:
        raise ValueError("N must be even")
    fld = field(order)
    labels = []
    for b in range(2):
        for a in range(N):
            lab = ("" if a == 0 else ("K" if a == 1 else f"K^{a}")) + ("E" if b else "")
            labels.append(lab or "1")

    def ix(a, b):
        return (a % N) + N * b

    mult = {}
    for a, b, c, d in itertools.product(range(N), range(2), range(N), range(2)):
        if b + d < 2:
            mult[(ix(a, b), ix(c, d), ix(a + c, b + d))] = (-1) ** (b * c)
    cop = {}
    anti = {}
    for a in range(N):
        cop[(ix(a, 0), ix(a, 0), ix(a, 0))] = 1
        # Delta(K^a E) = K^a E (x) K^(a+1) + K^a (x) K^a E
        cop[(ix(a, 1), ix(a, 1), ix(a + 1, 0))] = 1
        cop[(ix(a, 1), ix(a, 0), ix(a, 1))] = 1
        anti[(ix(a, 0), ix(-a, 0))] = 1
        # s(E) = -E K^-1, s(K^a E) = s(E) K^-a = -E K^-(a+1) = -(-1)^(a+1) K^-(a+1) E
        anti[(ix(a, 1), ix(-(a + 1), 1))] = -((-1) ** (a + 1))
    unit = [1] + [0] * (2 * N - 1)
    counit = [1 if b == 0 else 0 for b in range(2) for a in range(N)]
    return HopfAlgebra(fld, labels, mult, unit, cop, counit, anti, name=f"borel_{N}")


# ---------------------------------------------------------------------------
# generic constructions


def drinfeld_double(H: HopfAlgebra) -> HopfAlgebra:
    """D(H) = H^{*cop} (x) H with basis ``e^p (x) b_q`` (index ``p*d + q``).

    Multiplication ``(f (x) a)(g (x) b) = f g(s^-1(a_3) ? a_1) (x) a_2 b`` and
    ``rho = sum (1 (x) b_i) (x) (e^i (x) 1)``.
    """
    fld, d = H.field, H.dim
    z = fld.zero
    mD = H._D  # (k, i, j) -> coeff of b_i (x) b_j in Delta(b_k)
    mM = H._m
    unitH = H.unit.coeffs
    epsH = H.counit.coeffs
    Sinv = H._Sinv_rows

    def idx(p, q):
        return p * d + q

    # dual multiplication: e^p e^k = sum_t Delta[t, p, k] e^t
    dual_mult: dict = {}
    for (t, p, k), c in mD.items():
        dual_mult.setdefault((p, k), []).append((t, c))
    # iterated coproduct of each b_a
    D2 = []
    for a in range(d):
        X = H.tensor_coproduct({(a,): fld.one}, 0)
        D2.append(H.tensor_coproduct(X, 1))

    labels = []
    for p in range(d):
        for q in range(d):
            labels.append(f"e{H.labels[p]}|{H.labels[q]}")

    B = [H.basis(i) for i in range(d)]
    mult: dict = {}
    for a in range(d):
        for (a1, a2, a3), c0 in D2[a].items():
            left = H.antipode_of(B[a3], -1)
            # conj[k] = s^-1(a3) b_k a1 as a vector
            conj = [left * B[k] * B[a1] for k in range(d)]
            for r in range(d):
                # g' = sum_k coeff_r(conj[k]) e^k
                gk = [(k, conj[k].coeffs[r]) for k in range(d) if conj[k].coeffs[r]]
                if not gk:
                    continue
                for p in range(d):
                    fvals: dict = {}
                    for k, ck in gk:
                        for t, ct in dual_mult.get((p, k), ()):
                            _acc(fvals, t, ck * ct)
                    if not fvals:
                        continue
                    for b in range(d):
                        for k2, cm in H._mrow.get((a2, b), ()):
                            for t, cf in fvals.items():
                                key = (idx(p, a), idx(r, b), idx(t, k2))
                                val = c0 * cf * cm
                                prev = mult.get(key)
                                mult[key] = val if prev is None else prev + val
    mult = {k: v for k, v in mult.items() if v}

    # coproduct: Delta(e^p (x) b_q) = sum (e^p_(1) (x) q_1) (x) (e^p_(2) (x) q_2)
    # with Delta_cop(e^p) = sum_{i,j} m[j, i, p] e^i (x) e^j
    dual_cop: dict = {}
    for (j, i, p), c in mM.items():
        dual_cop.setdefault(p, []).append(((i, j), c))
    cop: dict = {}
    for p in range(d):
        for q in range(d):
            for (i, j), c1 in dual_cop.get(p, ()):
                for (q1, q2), c2 in H._Drow.get(q, ()):
                    _acc(cop, (idx(p, q), idx(i, q1), idx(j, q2)), c1 * c2)

    # unit = eps_H (x) 1, counit(e^p (x) b_q) = unit_H[p] eps(b_q)
    unit = [z] * (d * d)
    for p in range(d):
        for q in range(d):
            if epsH[p] and unitH[q]:
                unit[idx(p, q)] = epsH[p] * unitH[q]
    counit = [unitH[p] * epsH[q] for p in range(d) for q in range(d)]

    # antipode: s(f (x) a) = (eps (x) s(a)) (f o s^-1 (x) 1)
    D0 = HopfAlgebra(fld, labels, mult, unit, cop, counit, {}, name=f"D({H.name})")
    anti: dict = {}
    eps_vec = [(p, epsH[p]) for p in range(d) if epsH[p]]
    for p in range(d):
        # f o s^-1 = sum_k e^p(s^-1(b_k)) e^k
        fs = [(k, c) for k in range(d) for (pp, c) in Sinv.get(k, ()) if pp == p]
        right = D0.element([z] * (d * d))
        rc = list(right.coeffs)
        for k, c in fs:
            for qq in range(d):
                if unitH[qq]:
                    rc[idx(k, qq)] = rc[idx(k, qq)] + c * unitH[qq]
        right = D0.element(rc)
        for q in range(d):
            lc = [z] * (d * d)
            for j, c in H._Srow.get(q, ()):
                for pp, e in eps_vec:
                    lc[idx(pp, j)] = lc[idx(pp, j)] + c * e
            val = D0.element(lc) * right
            for t, c in val.items():
                anti[(idx(p, q), t)] = c
    rho: dict = {}
    for i in range(d):
        for pp, e in eps_vec:
            for k in range(d):
                if unitH[k]:
                    _acc(rho, (idx(pp, i), idx(i, k)), e * unitH[k])
    return HopfAlgebra(fld, labels, mult, unit, cop, counit, anti, rho=rho, name=f"D({H.name})")


def grouplikes(A: HopfAlgebra) -> list:
    """Grouplike elements that are (scaled) basis vectors or products of such.

    Only searches elements supported on a small set of basis vectors found by
    closing the set of basis grouplikes under multiplication; enough for the
    algebras built here.
    """
    fld = A.field
    found = []
    for i in range(A.dim):
        b = A.basis(i)
        D = A.coproduct_of(b)
        if D == {(i, i): fld.one} and A.counit(b) == fld.one:
            found.append(b)
    seen = {x.coeffs for x in found}
    frontier = list(found)
    while frontier:
        new = []
        for x in frontier:
            for y in found:
                z = x * y
                if z.coeffs not in seen:
                    seen.add(z.coeffs)
                    new.append(z)
        found.extend(new)
        frontier = new
    return found


def quotient_by_grouplike(A: HopfAlgebra, c, name: str = "") -> HopfAlgebra:
    """Hopf quotient ``A / (c - 1)A`` for a central grouplike ``c``."""
    fld, d = A.field, A.dim
    for i in range(d):
        if not A.commutes(c, A.basis(i)):
            raise AlgebraDataError("quotient element is not central")
    gens = [(c * A.basis(i) - A.basis(i)).coeffs for i in range(d)]
    red, piv = linalg.rref(gens, fld, d)
    pivset = set(piv)
    free = [k for k in range(d) if k not in pivset]
    pos = {k: n for n, k in enumerate(free)}

    def project(vec) -> list:
        v = list(vec)
        for r, p in zip(red, piv):
            if v[p]:
                cp = v[p]
                v = [x - cp * y for x, y in zip(v, r)]
        return [v[k] for k in free]

    # projection of each basis vector as sparse rows
    rows = {}
    for k in range(d):
        e = [fld.zero] * d
        e[k] = fld.one
        pr = project(e)
        rows[k] = [(j, x) for j, x in enumerate(pr) if x]
    n = len(free)
    labels = [A.labels[k] for k in free]
    mult: dict = {}
    for a, ka in enumerate(free):
        for b, kb in enumerate(free):
            for k, cm in A._mrow.get((ka, kb), ()):
                for j, x in rows[k]:
                    _acc(mult, (a, b, j), cm * x)
    cop: dict = {}
    for a, ka in enumerate(free):
        for (i, j), cc in A._Drow.get(ka, ()):
            for i2, x in rows[i]:
                for j2, y in rows[j]:
                    _acc(cop, (a, i2, j2), cc * x * y)
    anti: dict = {}
    for a, ka in enumerate(free):
        for k, cs in A._Srow.get(ka, ()):
            for j, x in rows[k]:
                _acc(anti, (a, j), cs * x)

    def proj_elem(el):
        return project(el.coeffs)

    unit = proj_elem(A.unit)
    counit = [A.counit.coeffs[k] for k in free]
    rho = None
    if A.has_rho:
        rho = {}
        for (i, j), cr in A.rho.items():
            for i2, x in rows[i]:
                for j2, y in rows[j]:
                    _acc(rho, (i2, j2), cr * x * y)
    G = proj_elem(A.G) if A.G is not None else None
    Q = HopfAlgebra(fld, labels, mult, unit, cop, counit, anti, rho=rho, grouplike=G, name=name or f"{A.name}/(c-1)")
    Q.parent_projection = lambda el: Q.element(proj_elem(el))
    return Q


def build_uq_sl2_prime_q4() -> HopfAlgebra:
    """Regenerate the ``uq_sl2_prime_q4`` structure constants from scratch.

    Start from the Borel algebra B (K^4 = 1, E^2 = 0, KE = -EK), form D(B),
    divide by the central grouplike ``chi^2 K`` (``chi`` the character with
    ``chi(K) = i``) and rewrite the 16-dimensional quotient in the basis
    ``K^a F^b E^c`` where K is the image of ``chi``, E the image of E and F
    the image of the functional dual to the E-line.  The ribbon grouplike is
    the image of K from B, which becomes ``K^2``.
    """
    H = borel_algebra(4, 4)
    fld, d = H.field, H.dim
    D = drinfeld_double(H)
    e_index = [H.index("1" if a == 0 else ("K" if a == 1 else f"K^{a}")) for a in range(4)]
    eE_index = [H.index(("K" if a == 1 else f"K^{a}") + "E" if a else "E") for a in range(4)]

    def dual_sum(weights, idxs, right):
        c = [fld.zero] * (d * d)
        for w, p in zip(weights, idxs):
            c[p * d + right] = w
        return D.element(c)

    one_H = H.index("1")
    chi = dual_sum([fld.power(a) for a in range(4)], e_index, one_H)
    eps_sum = [fld.one] * 4
    K_old = dual_sum(eps_sum, e_index, H.index("K"))
    E_old = dual_sum(eps_sum, e_index, H.index("E"))
    F_old = dual_sum(eps_sum, eE_index, one_H)
    Q = quotient_by_grouplike(D, chi * chi * K_old)
    K, E, F = (Q.parent_projection(x) for x in (chi, E_old, F_old))
    G = Q.parent_projection(K_old)
    Q = HopfAlgebra(
        Q.field, Q.labels, Q._m, Q.unit.coeffs, Q._D, Q.counit.coeffs, Q._S,
        rho=Q._rho, grouplike=G.coeffs, name=Q.name,
    )
    els, labels = [], []
    for c in range(2):
        for b in range(2):
            for a in range(4):
                els.append(Q.product(K ** a, F ** b, E ** c))
                lab = ("" if a == 0 else ("K" if a == 1 else f"K^{a}")) + ("F" if b else "") + ("E" if c else "")
                labels.append(lab or "1")
    return change_basis(Q, els, labels, "uq_sl2_prime_q4")


def change_basis(A: HopfAlgebra, elements: list, labels: list, name: str = "") -> HopfAlgebra:
    """Re-express ``A`` in a new basis given as elements of ``A``."""
    fld, d = A.field, A.dim
    if len(elements) != d:
        raise AlgebraDataError("need exactly dim new basis elements")
    # columns of P are the new basis vectors in old coordinates
    P = [[elements[j].coeffs[i] for j in range(d)] for i in range(d)]
    try:
        Pinv = linalg.inverse(P, fld)
    except linalg.SingularMatrixError:
        raise AlgebraDataError("new basis is linearly dependent") from None

    def coords(x) -> list:
        return [sum((Pinv[i][k] * c for k, c in x.items()), fld.zero) for i in range(d)]

    mult: dict = {}
    for i in range(d):
        for j in range(d):
            for k, c in enumerate(coords(elements[i] * elements[j])):
                if c:
                    mult[(i, j, k)] = c

    def coords2(T: dict) -> dict:
        out: dict = {}
        for (a, b), c in T.items():
            for i in range(d):
                if Pinv[i][a]:
                    for j in range(d):
                        if Pinv[j][b]:
                            _acc(out, (i, j), c * Pinv[i][a] * Pinv[j][b])
        return out

    cop = {}
    anti = {}
    for i in range(d):
        for (a, b), c in coords2(A.coproduct_of(elements[i])).items():
            cop[(i, a, b)] = c
        for k, c in enumerate(coords(A.antipode_of(elements[i]))):
            if c:
                anti[(i, k)] = c
    unit = coords(A.unit)
    counit = [A.counit(e) for e in elements]
    rho = coords2(A.rho) if A.has_rho else None
    G = coords(A.G) if A.G is not None else None
    return HopfAlgebra(fld, labels, mult, unit, cop, counit, anti, rho=rho, grouplike=G, name=name or A.name)
