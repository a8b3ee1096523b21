import json
from fractions import Fraction

import pytest

from mqapprox.approximation.approximant import Approximant, Interval, evaluate
from mqapprox.expansion import MultiquadricParams
from mqapprox.scalars import to_fraction, to_mpf, working_context

HARDY = MultiquadricParams(k=1, c=1)
UNIT = Interval(0, 1)


def _recovery_of_one_half() -> Approximant:
    terms = [(8, Fraction(64, 3)), (16, Fraction(-32)), (32, Fraction(32, 3))]
    return Approximant(params=HARDY, terms=terms, interval=UNIT, precision=79)


def test_interval():
    interval = Interval.from_text("-1/2, 2.5")
    assert (interval.a, interval.b) == (Fraction(-1, 2), Fraction(5, 2))
    assert interval.length == 3
    assert interval.max_abs == Fraction(5, 2)
    assert interval.midpoint == 1
    assert UNIT.grid(5) == [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1]
    with pytest.raises(ValueError):
        Interval(1, 1)
    with pytest.raises(ValueError):
        Interval.from_text("0")
    with pytest.raises(ValueError):
        UNIT.grid(1)


def test_evaluate_examples():
    empty = Approximant(params=HARDY, terms=(), interval=UNIT, precision=64)
    assert float(evaluate(empty, Fraction(1, 2))) == 0.0
    assert empty.largest_center == 0

    single = Approximant(params=HARDY, terms=[(8, 1)], interval=UNIT, precision=64)
    assert float(evaluate(single, 0)) == pytest.approx(65**0.5, rel=1e-15)
    assert evaluate(single, 0).precision == 64

    recovered = _recovery_of_one_half()
    assert float(evaluate(recovered, 0)) == pytest.approx(0.49576, abs=5e-5)
    assert abs(float(evaluate(recovered, 0)) - 0.5) <= 0.005


def test_approximant_validation():
    with pytest.raises(ValueError, match="strictly increasing"):
        Approximant(params=HARDY, terms=[(16, 1), (8, 1)], interval=UNIT, precision=64)
    with pytest.raises(ValueError, match="below the threshold"):
        Approximant(params=HARDY, terms=[(7, 1)], interval=UNIT, precision=64)
    # the threshold itself is allowed
    Approximant(params=HARDY, terms=[(8, 1)], interval=UNIT, precision=64)


def test_accessors():
    appr = _recovery_of_one_half()
    assert appr.centers == (8, 16, 32)
    assert appr.coefficients == (Fraction(64, 3), -32, Fraction(32, 3))
    assert appr.largest_center == 32
    wider = appr.with_precision(200)
    assert wider.precision == 200
    assert wider.terms == appr.terms
    assert appr.precision == 79


def test_json_round_trip():
    appr = _recovery_of_one_half()
    document = json.loads(appr.to_json())
    assert document["k"] == 1
    assert document["c"] == "1"
    assert document["precision_bits"] == 79
    assert document["interval"] == ["0", "1"]
    assert [y for y, _ in document["terms"]] == ["8", "16", "32"]

    restored = Approximant.from_json(appr.to_json())
    ctx = working_context(79)
    assert restored.centers == appr.centers
    assert restored.coefficients == tuple(to_fraction(to_mpf(ctx, a)) for a in appr.coefficients)
    for x in UNIT.grid(9):
        assert restored.value_at(x) == appr.value_at(x)
