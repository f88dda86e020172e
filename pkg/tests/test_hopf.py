import pytest

from krh.algebra_io import AlgebraFileError, algebra_to_dict, dump_algebra, load_algebra_text, parse_element
from krh.builtins import builtin_algebra, builtin_names, group_algebra
from krh.hopf import (
    AlgebraDataError,
    check_hopf_axioms,
    check_quasitriangular,
    check_ribbon,
    drinfeld_u,
    integral_report,
    ribbon_element,
    right_integral,
    trace_functional,
    trace_report,
    with_structure,
)


def test_builtin_names():
    assert "sweedler_h4" in builtin_names()
    with pytest.raises(KeyError):
        builtin_algebra("group_Zn:x")
    with pytest.raises(KeyError):
        builtin_algebra("nope")


def test_axiom_suites_pass(alg):
    assert check_hopf_axioms(alg).passed
    assert check_quasitriangular(alg).passed
    assert check_ribbon(alg).passed


def test_drinfeld_u_conjugates_s2(alg):
    u = drinfeld_u(alg)
    ui = alg.inverse(u)
    for i in range(alg.dim):
        b = alg.basis(i)
        assert alg.antipode_of(b, 2) == u * b * ui


def test_ribbon_element_central(alg):
    v = ribbon_element(alg)
    assert all(alg.commutes(v, alg.basis(i)) for i in range(alg.dim))


def test_integral_one_dimensional(alg):
    lam = right_integral(alg)
    assert len(lam.support()) >= 1


def test_h4_integral_on_gx(h4):
    lam = right_integral(h4)
    assert [h4.labels[i] for i in lam.support()] == ["gx"]


def test_integral_properties_unimodular(uq):
    lam = right_integral(uq)
    assert integral_report(uq, lam).passed
    assert trace_report(uq, trace_functional(uq, lam)).passed


def test_h4_is_not_unimodular(h4):
    # the left and right integrals differ, so the trace identities need not hold
    lam = right_integral(h4)
    assert not integral_report(h4, lam).passed


def test_corrupted_multiplication_is_caught():
    doc = algebra_to_dict(group_algebra(2))
    doc["mult"] = [e for e in doc["mult"] if not (e["i"] == 1 and e["j"] == 1)]
    doc["mult"].append({"i": 1, "j": 1, "k": 1, "coeff": "1"})
    import json

    bad = load_algebra_text(json.dumps(doc))
    rep = check_hopf_axioms(bad)
    assert not rep.passed
    assert rep.failures()[0].witness is not None


def test_dump_load_roundtrip(alg):
    again = load_algebra_text(dump_algebra(alg))
    assert again.labels == alg.labels
    for i in range(alg.dim):
        for j in range(alg.dim):
            assert (again.basis(i) * again.basis(j)).coeffs == (alg.basis(i) * alg.basis(j)).coeffs


@pytest.mark.parametrize(
    "text, msg",
    [("{", "line 1"), ("[]", "top level"), ('{"field": {"cyclotomic_order": 0}}', "cyclotomic_order")],
)
def test_file_errors(text, msg):
    with pytest.raises(AlgebraFileError, match=msg):
        load_algebra_text(text)


def test_parse_element(uq):
    x = parse_element("2*K + (q)*FE - 1", uq)
    assert x.coeffs[uq.index("K")] == uq.field.parse("2")
    assert x.coeffs[uq.index("FE")] == uq.field.zeta
    assert x.coeffs[0] == uq.field.parse("-1")
    with pytest.raises(AlgebraFileError):
        parse_element("Z", uq)


def test_ribbon_needs_grouplike(h4):
    bare = with_structure(h4, grouplike=None)
    with pytest.raises(AlgebraDataError):
        check_ribbon(bare)
