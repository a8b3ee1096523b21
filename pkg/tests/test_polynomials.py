from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mqapprox.polynomials import RationalPolynomial
from mqapprox.scalars import working_context

coefficient_lists = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=12), max_size=7)


def test_construction_trims_trailing_zeros():
    p = RationalPolynomial([1, 0, Fraction(1, 2), 0, 0])
    assert p.coefficients == (1, 0, Fraction(1, 2))
    assert p.degree == 2
    assert p.leading == Fraction(1, 2)
    assert p[5] == 0
    assert RationalPolynomial([0, 0]).is_zero()
    assert RationalPolynomial.zero().degree == -1
    with pytest.raises(IndexError):
        p[-1]
    with pytest.raises(ValueError):
        RationalPolynomial.monomial(-1)


def test_evaluation():
    p = RationalPolynomial.from_coefficients([1, 0, Fraction(1, 2)])
    assert p(Fraction(2)) == 3
    ctx = working_context(80)
    assert abs(p.evaluate_in(ctx, Fraction(1, 3)) - (ctx.mpf(1) + ctx.mpf(1) / 18)) < ctx.mpf(2) ** -75


def test_arithmetic():
    x = RationalPolynomial.monomial(1)
    p = (x + 1) * (x - 1)
    assert p == RationalPolynomial([-1, 0, 1])
    assert p - p == RationalPolynomial.zero()
    assert 2 * x == RationalPolynomial([0, 2])
    assert -x + 3 == RationalPolynomial([3, -1])
    assert x * RationalPolynomial.zero() == RationalPolynomial.zero()


@given(coefficient_lists, coefficient_lists, st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_arithmetic_agrees_with_evaluation(a: list[Fraction], b: list[Fraction], x: Fraction):
    p, q = RationalPolynomial(a), RationalPolynomial(b)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert (p * q)(x) == p(x) * q(x)


def test_interpolate():
    xs = [Fraction(0), Fraction(1), Fraction(3)]
    p = RationalPolynomial.interpolate(xs, [1, 2, 10])
    assert [p(x) for x in xs] == [1, 2, 10]
    assert p.degree <= 2
    with pytest.raises(ValueError):
        RationalPolynomial.interpolate([1, 1], [0, 1])
    with pytest.raises(ValueError):
        RationalPolynomial.interpolate([1, 2], [0])


@given(coefficient_lists)
def test_interpolate_reproduces_polynomials(coefficients: list[Fraction]):
    p = RationalPolynomial(coefficients)
    xs = [Fraction(i, 2) for i in range(len(coefficients) + 1)]
    assert RationalPolynomial.interpolate(xs, [p(x) for x in xs]) == p


def test_to_string():
    assert str(RationalPolynomial.zero()) == "0"
    assert str(RationalPolynomial([0, Fraction(1, 2)])) == "1/2*x"
    assert str(RationalPolynomial([2, -1, 0, Fraction(1, 2)])) == "1/2*x^3 - x + 2"
    assert RationalPolynomial([Fraction(-1, 8), 0, 1]).to_string("t") == "t^2 - 1/8"
    assert str(RationalPolynomial([0, -3])) == "-3*x"
