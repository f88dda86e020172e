import pytest

from krh import library as L
from krh import moves, tangle
from krh.evaluator import (
    BudgetExceeded,
    EvaluationError,
    InvariantUndefined,
    evaluate,
    hennings_invariant,
    ribbon_data,
    strand_walk,
)
from krh.hopf import ribbon_element
from krh.tangle import Slice, TangleDiagram


def encircled_closed_form(alg):
    """sum f'e lambda(f e') over two copies of the R-matrix."""
    lam = ribbon_data(alg).lam
    out = alg.zero
    for (e, e2), c in alg.rho.items():
        for (f, f2), d in alg.rho.items():
            out = out + (c * d * lam(alg.basis(f) * alg.basis(e2))) * (alg.basis(f2) * alg.basis(e))
    return out


def test_identity_is_unit(alg):
    ev = evaluate(tangle.identity(1), alg)
    assert ev.element() == alg.one
    assert ev.degree == 0


def test_curls_give_ribbon_element(alg):
    v = ribbon_element(alg)
    assert evaluate(L.curl(), alg).element() == v
    assert evaluate(L.reverse_curl(), alg).element() == alg.inverse(v)
    both = tangle.compose(L.curl(), L.reverse_curl())
    assert evaluate(both, alg).element() == alg.one


def test_flat_curl_is_grouplike(alg):
    ev = evaluate(L.flat_curl(), alg)
    assert ev.word() == alg.one and ev.degree == 1
    assert ev.element() == alg.G


def test_bead_value(uq):
    T = TangleDiagram(1, 1, (Slice("bead", 0, "2*K + FE"),))
    assert str(evaluate(T, uq).element()) == "2*K + FE"


def test_encircled_strand_closed_form(alg):
    assert evaluate(L.encircled_strand(), alg).element() == encircled_closed_form(alg)


def test_unknot_trace(alg):
    rib = ribbon_data(alg)
    assert evaluate(L.unknot(), alg).value == rib.tr(alg.G)


@pytest.mark.parametrize("seed", range(12))
def test_network_matches_enumeration(seed, alg):
    T = moves.random_diagram(4, seed, inputs=seed % 2)
    a = evaluate(T, alg, method="enumerate", term_budget=None)
    b = evaluate(T, alg)
    assert a == b


def test_budget_guard(uq):
    with pytest.raises(BudgetExceeded):
        evaluate(L.trefoil(), uq, term_budget=10)


def test_open_multi_strand(uq):
    ev = evaluate(tangle.double(L.curl()), uq)
    assert ev.strands == 2
    assert ev.tensor() == uq.coproduct_of(ribbon_element(uq))


def test_strand_walk_concentrates_beads(uq):
    T = TangleDiagram(1, 1, (Slice("bead", 0, "K"), Slice("cup", 1), Slice("flat", 0), Slice("cap", 1), Slice("bead", 0, "E")))
    w, d = strand_walk(T, uq)
    K, E = uq.basis(uq.index("K")), uq.basis(uq.index("E"))
    assert d == 1
    # the curl's G sits between the beads; concentrating it on the right conjugates E
    assert w * uq.G == K * uq.G * E
    assert evaluate(T, uq).element() == K * uq.G * E


def test_invariant_undefined_for_h4(h4):
    with pytest.raises(InvariantUndefined):
        hennings_invariant(L.unknot(), h4)


def test_invariant_needs_closed_diagram(uq):
    with pytest.raises(EvaluationError):
        hennings_invariant(L.curl(), uq)


def test_empty_diagram_invariant(uq):
    rep = hennings_invariant(TangleDiagram(0, 0, ()), uq)
    assert rep.INV == uq.field.one


def test_plus_one_unknot_is_s3(uq):
    assert hennings_invariant(L.framed_unknot(1), uq).INV == uq.field.one
    assert hennings_invariant(L.framed_unknot(-1), uq).INV == uq.field.one


def test_to_dict_scalars_roundtrip(uq):
    d = hennings_invariant(L.trefoil(), uq).to_dict()
    assert uq.field.parse(d["INV"]) == hennings_invariant(L.trefoil(), uq).INV
