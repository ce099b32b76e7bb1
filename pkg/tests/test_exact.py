from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zsym.exact import (
    I,
    ONE,
    ZERO,
    ExactArithmeticError,
    GaussianRational,
    arith,
    conj,
    format_scalar,
    gr,
    parse_scalar,
)

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 10**6)
scalars = st.builds(GaussianRational, rationals, rationals)


def test_basic_values():
    assert I * I == -ONE
    assert gr(1, 2) * gr(1, -2) == gr(5)
    assert gr(1) / gr(0, 1) == gr(0, -1)
    assert arith("1/2", "1/3", "add") == gr("5/6")
    assert arith(gr(3), gr(0, 1), "div") == gr(0, -3)


@pytest.mark.parametrize("x, expected", [(I, -I), (gr("3/2"), gr("3/2")), (gr(1, 2), gr(1, -2))])
def test_conjugation(x, expected):
    assert conj(x) == expected


def test_division_by_zero():
    with pytest.raises(ExactArithmeticError):
        ONE / ZERO


def test_unknown_op():
    with pytest.raises(ValueError):
        arith(1, 2, "pow")


def test_non_gaussian_complex_rejected():
    with pytest.raises(ExactArithmeticError):
        GaussianRational.coerce(0.5 + 1j)
    assert GaussianRational.coerce(2 - 3j) == gr(2, -3)


@pytest.mark.parametrize(
    "s, value",
    [("3/2", gr("3/2")), ("-1i", gr(0, -1)), ("1/2-3i", gr("1/2", -3)), ("i", I), ("-i", -I), ("1+i", gr(1, 1)), ("0", ZERO)],
)
def test_parse(s, value):
    assert parse_scalar(s) == value


@pytest.mark.parametrize("bad", ["", "1/0i?", "abc", "1++i", "2 3"])
def test_parse_rejects(bad):
    with pytest.raises((ExactArithmeticError, ZeroDivisionError)):
        parse_scalar(bad)


@given(scalars)
def test_format_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == ZERO


@given(scalars, scalars)
def test_matches_python_complex(x, y):
    # floating oracle on small-height values
    got = (x * y).to_complex()
    want = x.to_complex() * y.to_complex()
    assert abs(got - want) <= 1e-6 * max(1.0, abs(want))


@given(scalars.filter(bool))
def test_inverse(x):
    assert x * (ONE / x) == ONE
    assert x * x.conjugate() == GaussianRational(x.norm())


@given(scalars)
def test_canonical_idempotent(x):
    assert x.canonical().canonical() == x.canonical() == x
    assert isinstance(x.re, Fraction) and isinstance(x.im, Fraction)
