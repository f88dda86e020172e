from fractions import Fraction

import pytest

from krh.field import FieldArray, ScalarParseError, cyclotomic_polynomial, field


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


def test_zeta_has_order_n():
    for n in (1, 2, 3, 4, 5, 6, 8, 12):
        f = field(n)
        assert f.zeta ** n == f.one
        assert all(f.zeta ** k != f.one for k in range(1, n))


def test_field_arithmetic_and_inverse():
    f = field(8)
    x = f.parse("1 + 2*q - 1/3*q^3")
    assert x * x.inverse() == f.one
    assert (x - x) == f.zero
    assert x / x == f.one
    assert x ** -2 * x ** 2 == f.one


@pytest.mark.parametrize("text", ["0", "1/2", "-3*q^2 + 1", "q", "-q^3 + 7/5*q - 2"])
def test_parse_print_roundtrip(text):
    f = field(12)
    x = f.parse(text)
    assert f.parse(str(x)) == x


def test_i_only_over_q4():
    assert field(4).parse("i") == field(4).zeta
    with pytest.raises(ScalarParseError):
        field(3).parse("i")


@pytest.mark.parametrize("bad", ["", "1 +", "q^", "2 3", "x", "*q"])
def test_parse_errors(bad):
    with pytest.raises(ScalarParseError):
        field(4).parse(bad)


def test_rational_detection():
    f = field(4)
    assert f.parse("3/4").to_fraction() == Fraction(3, 4)
    assert not f.parse("q").is_rational()


def test_field_array_roundtrip():
    f = field(4)
    vals = [[f.parse("1/2"), f.zeta], [f.zero, f.parse("-q + 3")]]
    A = FieldArray.from_scalars(f, vals)
    assert A.shape == (2, 2)
    assert A.scalar(0, 1) == f.zeta
    assert (A - A).is_zero()
    assert A.T.scalar(1, 0) == f.zeta
    assert A.scale(f.parse("2")).scalar(0, 0) == f.one
