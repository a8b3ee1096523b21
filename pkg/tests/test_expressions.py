from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mqapprox.expressions import (
    FUNCTIONS,
    BinaryOp,
    Call,
    ExpressionAst,
    ExpressionEvaluationError,
    ExpressionSyntaxError,
    Negate,
    Number,
    Power,
    UnknownFunctionError,
    Variable,
    parse_expression,
)
from mqapprox.scalars import working_context

CTX = working_context(64)


def test_grammar_example():
    assert parse_expression("x^2+1") == BinaryOp(op="+", left=Power(base=Variable(), exponent=2), right=Number(1))
    assert parse_expression("  x ^ 2 +\t1 ") == parse_expression("x^2+1")


def test_precedence_and_associativity():
    assert parse_expression("1-2-3") == BinaryOp("-", BinaryOp("-", Number(1), Number(2)), Number(3))
    assert parse_expression("1+2*x") == BinaryOp("+", Number(1), BinaryOp("*", Number(2), Variable()))
    assert parse_expression("-x^2") == Power(Negate(Variable()), 2)
    assert parse_expression("-(x^2)") == Negate(Power(Variable(), 2))
    assert parse_expression("(1+x)^3") == Power(BinaryOp("+", Number(1), Variable()), 3)


def test_evaluation():
    assert parse_expression("sin(x)*exp(-x)").evaluate(CTX, CTX.mpf(0)) == 0
    assert parse_expression("1/3").evaluate(CTX, CTX.zero) == CTX.mpf(1) / 3
    assert parse_expression("abs(x) + sqrt(4)").evaluate(CTX, CTX.mpf(-2)) == 4
    assert parse_expression("0.25*x^2").evaluate(CTX, CTX.mpf(2)) == 1
    assert float(parse_expression("log(exp(x))").evaluate(CTX, CTX.mpf(0.5))) == pytest.approx(0.5)
    assert float(parse_expression("cos(x)").evaluate(CTX, CTX.zero)) == 1.0


def test_numbers_are_exact():
    assert parse_expression("0.1") == Number(Fraction(1, 10))
    assert parse_expression(".5") == Number(Fraction(1, 2))
    assert Number(Fraction(1, 8)).to_text() == "0.125"
    with pytest.raises(ValueError):
        Number(-1)


def test_domain_errors():
    with pytest.raises(ExpressionEvaluationError):
        parse_expression("sqrt(x)").evaluate(CTX, CTX.mpf(-1))
    with pytest.raises(ExpressionEvaluationError):
        parse_expression("log(x)").evaluate(CTX, CTX.zero)
    with pytest.raises(ExpressionEvaluationError):
        parse_expression("1/x").evaluate(CTX, CTX.zero)


def test_dangling_operator():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("x +")
    assert info.value.offset == 3
    assert "'x'" in info.value.expected


def test_syntax_errors():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("(x")
    assert info.value.offset == 2
    assert info.value.expected == ("')'",)
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("x^y")
    assert info.value.offset == 2
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("x $ 1")
    assert info.value.offset == 2
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("x 1")
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("")


def test_offsets_are_in_bytes():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("\u00a0x +")
    assert info.value.offset == 5
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("é")
    assert info.value.offset == 0


def test_unknown_function():
    with pytest.raises(UnknownFunctionError) as info:
        parse_expression("tan(x)")
    assert info.value.offset == 0
    assert info.value.expected == FUNCTIONS


def _expressions() -> st.SearchStrategy[ExpressionAst]:
    leaves = st.one_of(
        st.just(Variable()),
        st.fractions(min_value=0, max_value=1000, max_denominator=1).map(Number),
        st.integers(0, 9999).map(lambda n: Number(Fraction(n, 100))),
    )

    def extend(children: st.SearchStrategy[ExpressionAst]) -> st.SearchStrategy[ExpressionAst]:
        return st.one_of(
            children.map(Negate),
            st.builds(BinaryOp, st.sampled_from(["+", "-", "*", "/"]), children, children),
            st.builds(Power, children, st.integers(0, 5)),
            st.builds(Call, st.sampled_from(FUNCTIONS), children),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@given(_expressions())
@settings(max_examples=500)
def test_pretty_printing_round_trips(ast: ExpressionAst):
    assert parse_expression(ast.to_text()) == ast
