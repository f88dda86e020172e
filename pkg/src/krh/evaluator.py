"""Evaluation of tangle diagrams in a ribbon Hopf algebra.

Every crossing contributes a copy of the R-matrix ``rho = sum e (x) e'``:
``over`` puts ``e`` and ``e'`` on the two strands just above the crossing,
``under`` puts ``s(e)`` and ``e'`` just below it.  Each component is then
walked once (see :func:`krh.tangle.traverse`), collecting its beads into a
word ``w = s^i1(a1) s^i2(a2) ...`` where ``i`` counts the extrema passed so
far.  An open strand yields ``w G^d``, a closed one ``tr(w G^d)``, with d
the Whitney degree.

Two engines compute the same thing:

* ``"network"`` (default) treats the sum over R-matrix indices as a tensor
  network and contracts it exactly (:mod:`krh.network`);
* ``"enumerate"`` literally loops over all index assignments with exact
  scalars.  It is slow and kept as a reference oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg, network, tangle
from .algebra_io import parse_element
from .field import FieldArray, Scalar, tensordot
from .hopf import (
    AlgebraDataError,
    AlgebraElement,
    HopfAlgebra,
    LinearFunctional,
    drinfeld_u,
    right_integral,
    trace_functional,
)
from .tangle import TangleDiagram, TangleError

__all__ = [
    "DEFAULT_TERM_BUDGET",
    "EvaluationError",
    "InvariantUndefined",
    "Ribbon",
    "ribbon_data",
    "OpenEvaluation",
    "ClosedEvaluation",
    "evaluate",
    "strand_walk",
    "circle_morphisms",
    "check_circle_identities",
    "hennings_invariant",
    "InvariantReport",
    "BudgetExceeded",
]

DEFAULT_TERM_BUDGET = 10**8
BudgetExceeded = network.BudgetExceeded


class EvaluationError(ValueError):
    """The diagram cannot be evaluated in this algebra."""


class InvariantUndefined(EvaluationError):
    """lambda(v) or lambda(v^-1) vanishes, so INV is not defined."""


# ---------------------------------------------------------------------------
# per-algebra data


class Ribbon:
    """Derived ribbon data of an algebra, computed lazily and cached.

    Obtain instances through :func:`ribbon_data` so the cache is shared.
    """

    def __init__(self, alg: HopfAlgebra):
        if not alg.has_rho:
            raise AlgebraDataError("evaluation needs an R-matrix")
        if alg.G is None:
            raise AlgebraDataError("evaluation needs the grouplike element G")
        self.algebra = alg
        self.field = alg.field
        self._gpow: dict = {}
        self._spow: dict = {}
        self._bead: dict = {}
        self._trvec: dict = {}
        self._rmul: dict = {}

    # elements

    @cached_property
    def lam(self) -> LinearFunctional:
        return right_integral(self.algebra)

    @cached_property
    def tr(self) -> LinearFunctional:
        return trace_functional(self.algebra, self.lam)

    @cached_property
    def u(self) -> AlgebraElement:
        return drinfeld_u(self.algebra)

    @cached_property
    def v(self) -> AlgebraElement:
        return self.G_power(-1) * self.u

    @cached_property
    def v_inv(self) -> AlgebraElement:
        return self.algebra.inverse(self.v)

    @cached_property
    def lam_v(self) -> Scalar:
        return self.lam(self.v)

    @cached_property
    def lam_v_inv(self) -> Scalar:
        return self.lam(self.v_inv)

    def G_power(self, k: int) -> AlgebraElement:
        if k not in self._gpow:
            alg = self.algebra
            if k == 0:
                self._gpow[k] = alg.one
            elif k > 0:
                self._gpow[k] = self.G_power(k - 1) * alg.G
            else:
                self._gpow[k] = self.G_power(k + 1) * alg.inverse(alg.G)
        return self._gpow[k]

    def s_power(self, i: int, k: int) -> AlgebraElement:
        """``s^k(b_i)``."""
        if (i, k) not in self._spow:
            self._spow[i, k] = self.algebra.antipode_of(self.algebra.basis(i), k)
        return self._spow[i, k]

    # dense tensors for the network engine

    @cached_property
    def rho_factors(self) -> tuple:
        """``rho = C R`` with C (d x r) and R (r x d), r the rank of rho.

        Splitting each crossing through its rank keeps the bond between the
        two strands as small as possible.
        """
        alg, f = self.algebra, self.field
        d = alg.dim
        M = [[f.zero] * d for _ in range(d)]
        for (j, k), c in alg.rho.items():
            M[j][k] = c
        R, piv = linalg.rref(M, f, d)
        C = [[M[j][p] for p in piv] for j in range(d)]
        return FieldArray.from_scalars(f, C), FieldArray.from_scalars(f, R)

    @cached_property
    def unit_vector(self) -> FieldArray:
        return self.algebra.dense.unit

    def bead_tensor(self, e: int, leg: str) -> FieldArray:
        """``B[a, r, c]``: coefficient of ``b_c`` in ``b_a s^e(x_r)``.

        ``x_r`` runs over the left factors of rho (``leg="e"``) or the right
        ones (``leg="e'"``) in the factorization :attr:`rho_factors`.
        """
        if (e, leg) not in self._bead:
            dense = self.algebra.dense
            S = dense.antipode_power(e)  # (j, k)
            B = tensordot(S, dense.mult, ([1], [1]))  # (j, a, c)
            C, R = self.rho_factors
            X = tensordot(C, B, ([0], [0])) if leg == "e" else tensordot(R, B, ([1], [0]))
            self._bead[e, leg] = X.transpose(1, 0, 2)
        return self._bead[e, leg]

    def element_matrix(self, x: AlgebraElement) -> FieldArray:
        """``M[a, c]``: coefficient of ``b_c`` in ``b_a x``."""
        vec = FieldArray.from_scalars(self.field, list(x.coeffs))
        return tensordot(self.algebra.dense.mult, vec, ([1], [0]))

    def trace_vector(self, d: int) -> FieldArray:
        """``t[a] = tr(b_a G^d)``."""
        if d not in self._trvec:
            alg = self.algebra
            Gd = self.G_power(d)
            self._trvec[d] = FieldArray.from_scalars(
                self.field, [self.tr(alg.basis(a) * Gd) for a in range(alg.dim)]
            )
        return self._trvec[d]

    def right_mult(self, d: int) -> FieldArray:
        """``R[a, c]``: coefficient of ``b_c`` in ``b_a G^d``."""
        if d not in self._rmul:
            self._rmul[d] = self.element_matrix(self.G_power(d))
        return self._rmul[d]


def ribbon_data(alg: HopfAlgebra) -> Ribbon:
    cached = alg.__dict__.get("_ribbon_cache")
    if cached is None:
        cached = Ribbon(alg)
        alg.__dict__["_ribbon_cache"] = cached
    return cached


# ---------------------------------------------------------------------------
# results


def _sparse(arr: FieldArray) -> dict:
    return {idx: arr.scalar(*idx) for idx in arr.nonzero_indices()}


@dataclass
class OpenEvaluation:
    """Value of a diagram with free ends.

    ``words[i1, ..., ik]`` is the coefficient of ``b_i1 (x) ... (x) b_ik`` in
    the formal sum of concentrated words, one tensor factor per open strand
    (in traversal order).  ``degrees`` holds the Whitney degree per strand and
    ``endpoints`` the ``(start, end)`` pair of each strand.
    """

    algebra: HopfAlgebra
    words: FieldArray
    degrees: tuple
    endpoints: tuple

    @property
    def strands(self) -> int:
        return len(self.degrees)

    @cached_property
    def value(self) -> FieldArray:
        """The tensor with ``G^d`` appended to every strand."""
        rib = ribbon_data(self.algebra)
        out = self.words
        for ax, d in enumerate(self.degrees):
            if d:
                out = tensordot(out, rib.right_mult(d), ([ax], [0]))
                # the new axis landed last; move it back
                order = list(range(out.ndim - 1))
                order.insert(ax, out.ndim - 1)
                out = out.transpose(*order)
        return out

    def _single(self):
        if self.strands != 1:
            raise EvaluationError(f"diagram has {self.strands} open strands, not one")

    @property
    def degree(self) -> int:
        self._single()
        return self.degrees[0]

    def word(self) -> AlgebraElement:
        """``w[T]`` for a single-strand diagram."""
        self._single()
        return AlgebraElement(self.algebra, self.words.to_scalars())

    def element(self) -> AlgebraElement:
        """``a(T) = w[T] G^d`` for a single-strand diagram."""
        self._single()
        return AlgebraElement(self.algebra, self.value.to_scalars())

    def tensor(self) -> dict:
        """Sparse ``{index tuple: Scalar}`` form of :attr:`value`."""
        return _sparse(self.value)

    def terms(self) -> list:
        """Nonzero terms as ``(coefficient, labels)`` sorted by basis index."""
        labels = self.algebra.labels
        return [(c, tuple(labels[i] for i in idx)) for idx, c in sorted(self.tensor().items())]

    def __eq__(self, other):
        if not isinstance(other, OpenEvaluation):
            return NotImplemented
        return self.degrees == other.degrees and self.value == other.value

    def same_value(self, other: "OpenEvaluation") -> bool:
        """Equality of the evaluated tensors, ignoring how G was split off."""
        return self.value == other.value

    def to_dict(self) -> dict:
        out = {
            "kind": "open",
            "strands": self.strands,
            "degrees": list(self.degrees),
            "terms": [{"coeff": str(c), "basis": list(b)} for c, b in self.terms()],
        }
        if self.strands == 1:
            out["word"] = self.word().to_strings()
            out["element"] = self.element().to_strings()
        return out


@dataclass
class ClosedEvaluation:
    value: Scalar
    degrees: tuple = ()

    def __eq__(self, other):
        if isinstance(other, ClosedEvaluation):
            return self.value == other.value
        return NotImplemented

    def to_dict(self) -> dict:
        return {"kind": "closed", "value": str(self.value), "degrees": list(self.degrees)}


# ---------------------------------------------------------------------------
# evaluation


def _bead_elements(T: TangleDiagram, alg: HopfAlgebra) -> dict:
    out = {}
    for t, s in enumerate(T.slices):
        if s.kind == "bead":
            b = s.bead
            if isinstance(b, AlgebraElement):
                if b.algebra is not alg and b.algebra.dim != alg.dim:
                    raise EvaluationError(f"bead on slice {t} belongs to another algebra")
                out[t] = AlgebraElement(alg, b.coeffs)
            else:
                try:
                    out[t] = parse_element(str(b), alg)
                except Exception as exc:
                    raise EvaluationError(f"slice {t}: {exc}") from None
    return out


def _role_exponent(role: str, h: int) -> int:
    return h + 1 if role == "s(e)" else h


def _merge(a, la, b, lb):
    """Exact contraction of two small tensors over their shared labels."""
    shared = [l for l in la if l in lb]
    res = tensordot(a, b, ([la.index(l) for l in shared], [lb.index(l) for l in shared]))
    return res, tuple(l for l in la if l not in shared) + tuple(l for l in lb if l not in shared)


def _fuse_chain(items: list, bonds: set) -> list:
    """Absorb the bond-free pieces of one strand (unit, trace, explicit beads) into neighbours."""
    items = list(items)
    k = 0
    while len(items) > 1 and k < len(items):
        arr, ls = items[k]
        if any(l in bonds for l in ls):
            k += 1
            continue
        j = k + 1 if k + 1 < len(items) else k - 1
        a, b = (items[k], items[j]) if k < j else (items[j], items[k])
        merged = _merge(a[0], a[1], b[0], b[1])
        lo = min(k, j)
        items[lo : lo + 2] = [merged]
        k = 0
    return items


def _network_for(T: TangleDiagram, rib: Ribbon, walks: list, beads: dict) -> network.Network:
    tensors, labels = [], []
    counter = itertools.count()
    bond = {t: next(counter) for t, s in enumerate(T.slices) if s.kind in ("over", "under")}
    bonds = set(bond.values())
    out = []
    for tr in walks:
        cur = next(counter)
        chain = [(rib.unit_vector, (cur,))]
        for ev in tr.beads():
            _, t, role, h = ev
            nxt = next(counter)
            if role == "bead":
                x = rib.algebra.antipode_of(beads[t], h)
                chain.append((rib.element_matrix(x), (cur, nxt)))
            else:
                leg = "e'" if role == "e'" else "e"
                chain.append((rib.bead_tensor(_role_exponent(role, h), leg), (cur, bond[t], nxt)))
            cur = nxt
        if tr.closed:
            chain.append((rib.trace_vector(tr.degree), (cur,)))
        else:
            out.append(cur)
        for arr, ls in _fuse_chain(chain, bonds):
            tensors.append(arr)
            labels.append(ls)
    return network.Network(rib.field, tensors, labels, tuple(out))


def _enumeration_cost(T: TangleDiagram, rib: Ribbon) -> int:
    nnz = len(rib.algebra.rho)
    n = sum(1 for s in T.slices if s.kind in ("over", "under"))
    beads = 2 * n + sum(1 for s in T.slices if s.kind == "bead") + 1
    return nnz**n * beads * rib.algebra.dim**2


def _enumerate(T: TangleDiagram, rib: Ribbon, walks: list, beads: dict):
    """Reference engine: explicit sum over R-matrix index assignments."""
    alg, f = rib.algebra, rib.field
    rho = sorted(alg.rho.items())
    crossings = [t for t, s in enumerate(T.slices) if s.kind in ("over", "under")]
    opens = [tr for tr in walks if not tr.closed]
    acc: dict = {}
    total = f.zero
    explicit: dict = {}
    for choice in itertools.product(rho, repeat=len(crossings)):
        weight = f.one
        assign = {}
        for t, ((j, k), c) in zip(crossings, choice):
            weight = weight * c
            assign[t] = (j, k)
        closed_val = f.one
        words = []
        for tr in walks:
            w = alg.one
            for _, t, role, h in tr.beads():
                if role == "bead":
                    if (t, h) not in explicit:
                        explicit[t, h] = alg.antipode_of(beads[t], h)
                    w = w * explicit[t, h]
                else:
                    j, k = assign[t]
                    w = w * rib.s_power(k if role == "e'" else j, _role_exponent(role, h))
            if tr.closed:
                closed_val = closed_val * rib.tr(w * rib.G_power(tr.degree))
                if not closed_val:
                    break
            else:
                words.append(w)
        if not closed_val:
            continue
        c0 = weight * closed_val
        if not opens:
            total = total + c0
            continue
        for combo in itertools.product(*(w.items() for w in words)):
            c = c0
            for _, x in combo:
                c = c * x
            key = tuple(i for i, _ in combo)
            acc[key] = acc[key] + c if key in acc else c
    if not opens:
        return total
    shape = (alg.dim,) * len(opens)
    vals = np.empty(shape, dtype=object)
    vals[...] = f.zero
    for key, c in acc.items():
        vals[key] = c
    return FieldArray.from_scalars(f, vals)


def evaluate(
    T: TangleDiagram,
    alg: HopfAlgebra,
    term_budget: int | None = DEFAULT_TERM_BUDGET,
    method: str = "network",
):
    """Evaluate ``T`` in ``alg``.

    Closed diagrams give a :class:`ClosedEvaluation` (the regular isotopy
    invariant TR), others an :class:`OpenEvaluation`.  ``term_budget`` caps
    the estimated number of multiply-adds; ``None`` disables the guard.
    """
    rib = ribbon_data(alg)
    walks = tangle.traverse(T)
    beads = _bead_elements(T, alg)
    for tr in walks:
        if tr.half_turns % 2:
            raise EvaluationError("a strand has an odd number of extrema; its Whitney degree is not an integer")
    if method == "network":
        net = _network_for(T, rib, walks, beads)
        res = network.contract(net, term_budget)
    elif method == "enumerate":
        cost = _enumeration_cost(T, rib)
        if term_budget is not None and cost > term_budget:
            raise BudgetExceeded(f"enumeration needs about {cost} multiplies, over the term budget of {term_budget}")
        res = _enumerate(T, rib, walks, beads)
        if isinstance(res, Scalar):
            res = FieldArray.from_scalars(rib.field, [res]).reshape()
    else:
        raise ValueError(f"unknown method {method!r}")
    degrees = tuple(tr.degree for tr in walks if not tr.closed)
    if T.is_closed or not degrees:
        val = res.scalar() if res.ndim == 0 else res.scalar(*([0] * res.ndim))
        return ClosedEvaluation(val, tuple(tr.degree for tr in walks))
    ends = tuple((tr.start, tr.end) for tr in walks if not tr.closed)
    return OpenEvaluation(alg, res, degrees, ends)


def strand_walk(T: TangleDiagram, alg: HopfAlgebra, component: int = 0, start: tuple | None = None):
    """Concentrate the explicit beads of one component: ``(w, d)``.

    Meant for decorated flat diagrams (crossings carry no beads here).  A
    closed component is walked upward from ``start`` (a point
    ``(level, position)``), by default the left leg of its lowest cup.
    """
    walks = tangle.traverse(T)
    if not 0 <= component < len(walks):
        raise TangleError(f"no component {component}")
    tr = walks[component]
    if start is not None:
        start = tuple(start)
        if start not in tr.points:
            raise TangleError("start segment is not on this component")
        if tr.closed:
            tr = tangle._walk(T, start[0], start[1], 1, closed=True)
    beads = _bead_elements(T, alg)
    w = alg.one
    for _, t, role, h in tr.beads():
        if role != "bead":
            continue
        w = w * alg.antipode_of(beads[t], h)
    return w, tr.degree


# ---------------------------------------------------------------------------
# circle morphisms and TR


def circle_morphisms(a: AlgebraElement, alg: HopfAlgebra) -> dict:
    """``O_R(a) = tr(a G^-1)``, ``O_L(a) = O_R(s^-1(a))`` and ``tau(a) = O_R(a G)``."""
    rib = ribbon_data(alg)
    Ginv = rib.G_power(-1)

    def O_R(x):
        return rib.tr(x * Ginv)

    return {
        "O_R": O_R(a),
        "O_L": O_R(alg.antipode_of(a, -1)),
        "tau": O_R(a * alg.G),
    }


def check_circle_identities(alg: HopfAlgebra):
    """Circle and tau identities on all basis inputs; returns an AxiomReport."""
    from .hopf import AxiomReport

    rib = ribbon_data(alg)
    rep = AxiomReport()
    d = alg.dim
    B = [alg.basis(i) for i in range(d)]
    g = alg.G * alg.G
    Ginv = rib.G_power(-1)

    def O_R(x):
        return rib.tr(x * Ginv)

    def first(pred):
        return next((i for i in range(d) if not pred(B[i])), None)

    w = first(lambda b: circle_morphisms(b, alg)["O_L"] == O_R(alg.antipode_of(b, -1)))
    rep.add("O_L(a) = O_R(s^-1(a))", None if w is None else (w,))
    w = first(lambda b: O_R(b) == O_R(alg.antipode_of(b, 2)))
    rep.add("O_R(a) = O_R(s^2(a))", None if w is None else (w,))
    w = first(lambda b: O_R(b) == O_R(alg.antipode_of(b) * g))
    rep.add("O_R(a) = O_R(s(a) G^2)", None if w is None else (w,))
    tau = [circle_morphisms(b, alg)["tau"] for b in B]
    if any(tau[i] != rib.tr(B[i]) for i in range(d)):
        rep.add("tau(a) = tr(a)", (next(i for i in range(d) if tau[i] != rib.tr(B[i])),))
    w = next(
        ((i, j) for i in range(d) for j in range(d)
         if circle_morphisms(B[i] * B[j], alg)["tau"] != circle_morphisms(B[j] * B[i], alg)["tau"]),
        None,
    )
    rep.add("tau(ab) = tau(ba)", w)
    w = first(lambda b: circle_morphisms(alg.antipode_of(b), alg)["tau"] == circle_morphisms(b, alg)["tau"])
    rep.add("tau(s(a)) = tau(a)", None if w is None else (w,))
    return rep


@dataclass
class InvariantReport:
    TR: Scalar
    INV: Scalar
    linking: tangle.LinkingData
    lam_v: Scalar
    lam_v_inv: Scalar

    def to_dict(self) -> dict:
        out = {"TR": str(self.TR), "INV": str(self.INV)}
        out.update(self.linking.to_dict())
        out["lambda_v"] = str(self.lam_v)
        out["lambda_v_inv"] = str(self.lam_v_inv)
        return out


def hennings_invariant(T: TangleDiagram, alg: HopfAlgebra, term_budget: int | None = DEFAULT_TERM_BUDGET) -> InvariantReport:
    """``INV(K) = lambda(v)^(-b+) lambda(v^-1)^(-b-) TR(K)``.

    Agrees with the half-integer form whenever the linking matrix is
    nondegenerate; ``n_0`` is reported so degenerate cases can be spotted.
    """
    if not T.is_closed:
        raise EvaluationError("the 3-manifold invariant needs a closed diagram")
    rib = ribbon_data(alg)
    lv, lvi = rib.lam_v, rib.lam_v_inv
    if not lv or not lvi:
        raise InvariantUndefined(
            f"INV is undefined for this algebra: lambda(v) = {lv}, lambda(v^-1) = {lvi}"
        )
    link = tangle.linking_data(T)
    TR = evaluate(T, alg, term_budget).value
    INV = TR * lv ** (-link.positive) * lvi ** (-link.negative)
    return InvariantReport(TR, INV, link, lv, lvi)
