from fractions import Fraction

import pytest

from mqapprox.approximation.targets import TargetFunction
from mqapprox.constants import TARGET_CATALOG
from mqapprox.expressions import ExpressionSyntaxError
from mqapprox.polynomials import RationalPolynomial
from mqapprox.scalars import working_context

CTX = working_context(64)


def test_from_expression():
    f = TargetFunction.from_expression("x^2 + 1")
    assert f.description == "x^2 + 1"
    assert f(CTX, Fraction(1, 2)) == CTX.mpf(1.25)
    with pytest.raises(ExpressionSyntaxError):
        TargetFunction.from_expression("x +")


def test_from_catalog():
    for name in TARGET_CATALOG:
        assert TargetFunction.from_catalog(name).description == name
    assert float(TargetFunction.from_catalog("runge")(CTX, Fraction(1, 5))) == pytest.approx(0.5)
    assert float(TargetFunction.from_catalog("exp")(CTX, 1)) == pytest.approx(2.718281828459045)
    with pytest.raises(KeyError):
        TargetFunction.from_catalog("tan")


def test_from_text_prefers_the_catalog():
    assert TargetFunction.from_text("sin").description == "sin"
    assert TargetFunction.from_text("sin(2*x)").description == "sin(2*x)"


def test_from_polynomial():
    p = RationalPolynomial([1, 0, Fraction(1, 2)])
    f = TargetFunction.from_polynomial(p)
    assert f.description == "1/2*x^2 + 1"
    assert f(CTX, 2) == 3
