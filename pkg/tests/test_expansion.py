from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mqapprox.expansion import (
    ConvergenceThresholdError,
    ExpansionTable,
    MultiquadricParams,
    coefficient,
    coefficient_sum,
    expansion_coefficient_oracle,
    expansion_polynomial,
    leading_coefficient,
    multiquadric_eval,
    odd_case_reduced_sum,
    truncated_expansion_eval,
    verify_coefficient_lemma,
)
from mqapprox.polynomials import RationalPolynomial
from mqapprox.scalars import LemmaHypothesisError, half_integer_binomial

HARDY = MultiquadricParams(k=1, c=1)
shapes = st.sampled_from([Fraction(1), Fraction(2), Fraction(1, 3), Fraction(1, 2), Fraction(3, 2)])


def test_params_validation():
    assert HARDY.c == 1
    assert MultiquadricParams(k=2, c="1/2").c == Fraction(1, 2)
    with pytest.raises(ValueError):
        MultiquadricParams(k=1, c=0)
    with pytest.raises(ValueError):
        MultiquadricParams(k=0, c=1)
    with pytest.raises(TypeError):
        MultiquadricParams(k=1.5, c=1)  # pyright: ignore[reportArgumentType]


def test_lemma_constant_and_threshold():
    assert MultiquadricParams(k=1, c=2).lemma_constant == 2
    assert MultiquadricParams(k=2, c=1).lemma_constant == Fraction(3, 8)
    assert HARDY.threshold(1) == 8
    assert HARDY.threshold(-3) == 16


def test_expansion_polynomial_examples():
    x = RationalPolynomial.monomial(1)
    assert expansion_polynomial(HARDY, 0) == RationalPolynomial.constant(1)
    assert expansion_polynomial(HARDY, 1) == -x
    assert expansion_polynomial(HARDY, 2) == RationalPolynomial.constant(Fraction(1, 2))
    assert expansion_polynomial(HARDY, 3) == x * Fraction(1, 2)
    assert expansion_polynomial(HARDY, 4) == x * x * Fraction(1, 2) - Fraction(1, 8)
    assert expansion_polynomial(MultiquadricParams(k=2, c=1), 4) == RationalPolynomial.constant(Fraction(3, 8))
    assert expansion_polynomial(MultiquadricParams(k=1, c=3), 3) == x * Fraction(9, 2)
    with pytest.raises(ValueError):
        expansion_polynomial(HARDY, -1)


@given(st.integers(1, 4), shapes, st.integers(0, 16))
@settings(max_examples=60)
def test_expansion_polynomial_matches_generating_function(k: int, c: Fraction, j: int):
    params = MultiquadricParams(k=k, c=c)
    assert expansion_polynomial(params, j) == expansion_coefficient_oracle(params, j)


@given(st.integers(1, 4), shapes, st.integers(0, 12))
@settings(max_examples=60)
def test_degree_and_leading_coefficient(k: int, c: Fraction, offset: int):
    params = MultiquadricParams(k=k, c=c)
    j = 2 * k + offset
    poly = expansion_polynomial(params, j)
    assert poly.degree == offset
    assert poly.leading == params.lemma_constant > 0
    assert leading_coefficient(params, j) == poly.leading
    assert verify_coefficient_lemma(params, j).passed


@pytest.mark.parametrize(
    ("k", "c", "j"),
    [(1, Fraction(1), 2), (1, Fraction(1), 4), (1, Fraction(2), 5), (2, Fraction(1), 4), (3, Fraction(1, 2), 9)],
)
def test_leading_coefficient_is_positive(k: int, c: Fraction, j: int):
    expected = c ** (2 * k) * half_integer_binomial(k, k)
    assert expected > 0
    assert leading_coefficient(MultiquadricParams(k=k, c=c), j) == expected


def test_coefficient():
    assert coefficient(HARDY, 3, 1) == Fraction(1, 2)
    assert coefficient(HARDY, 3, 0) == 0
    assert coefficient(MultiquadricParams(k=1, c=2), 4, 2) == -2
    with pytest.raises(ValueError):
        coefficient(HARDY, 3, 2)


def test_lemma_hypothesis():
    with pytest.raises(LemmaHypothesisError):
        leading_coefficient(MultiquadricParams(k=2, c=1), 3)
    with pytest.raises(LemmaHypothesisError):
        verify_coefficient_lemma(HARDY, 1)
    report = verify_coefficient_lemma(MultiquadricParams(k=3, c=Fraction(1, 3)), 11)
    assert report.zero_checks == (True, True, True)
    assert report.leading_match


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [0, 1, 2, 5])
def test_odd_case_reduced_sum(k: int, m: int):
    j = 2 * k + 2 * m + 1
    for l in range(k):
        assert odd_case_reduced_sum(k, m, l) == coefficient_sum(k, j, l) == 0
    assert odd_case_reduced_sum(k, m, k) == coefficient_sum(k, j, k) == -half_integer_binomial(k, k)
    with pytest.raises(LemmaHypothesisError):
        odd_case_reduced_sum(k, m, k + 1)


def test_expansion_table():
    table = ExpansionTable.build(HARDY, 5)
    assert table.j_max == 5
    assert table.polys[3] == expansion_polynomial(HARDY, 3)


def test_multiquadric_eval():
    assert float(multiquadric_eval(HARDY, -8, 64)) == pytest.approx(65**0.5, rel=1e-15)
    assert float(multiquadric_eval(MultiquadricParams(k=2, c=2), 0, 64)) == pytest.approx(8.0)
    assert multiquadric_eval(HARDY, 1, 200).precision == 200
    with pytest.raises(ValueError):
        multiquadric_eval(HARDY, 1, 8)


def test_truncated_expansion_eval():
    exact = float(multiquadric_eval(HARDY, Fraction(1, 2) - 64, 128))
    truncated = float(truncated_expansion_eval(HARDY, Fraction(1, 2), 64, 10, 128))
    assert truncated == pytest.approx(exact, rel=1e-15)
    # the first omitted term is A_{1,2} / y = 1 / (2 y)
    coarse = float(truncated_expansion_eval(HARDY, Fraction(1, 2), 64, 1, 128))
    assert abs(coarse - exact) == pytest.approx(0.5 / 64, rel=0.1)


def test_truncated_expansion_threshold():
    # y = 8 is exactly the threshold for |x| = 1, c = 1
    truncated_expansion_eval(HARDY, 1, 8, 4, 64)
    with pytest.raises(ConvergenceThresholdError):
        truncated_expansion_eval(HARDY, 1, 7, 4, 64)
    with pytest.raises(ValueError):
        truncated_expansion_eval(HARDY, 0, 64, -1, 64)
