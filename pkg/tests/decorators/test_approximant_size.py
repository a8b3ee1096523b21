import logging
from fractions import Fraction

import pytest

from mqapprox.approximation.approximant import Approximant, Interval
from mqapprox.decorators.approximant_size import _calling_module, log_approximant_size
from mqapprox.expansion import MultiquadricParams

logger = logging.getLogger(__name__)

HARDY = MultiquadricParams(k=1, c=1)
UNIT = Interval(0, 1)


def _approximant(*centers: int, precision: int = 79) -> Approximant:
    return Approximant(params=HARDY, terms=[(y, 1) for y in centers], interval=UNIT, precision=precision)


def test_log_approximant_size(caplog: pytest.LogCaptureFixture):
    @log_approximant_size
    def three_terms() -> Approximant:
        return _approximant(8, 16, 32)

    @log_approximant_size(logger=logging.getLogger("my_test"))
    def far_center() -> Approximant:
        return _approximant(8, 123457, precision=120)

    @log_approximant_size(level=logging.WARN)
    def loud() -> Approximant:
        return _approximant(10)

    @log_approximant_size()
    def empty() -> Approximant:
        return _approximant()

    @log_approximant_size(allow_empty_output=False)
    def empty_strict() -> Approximant:
        return _approximant()

    @log_approximant_size(describe_func=lambda func, *args, **kwargs: f"{func.__name__}{args}")
    def described(scale: int) -> Approximant:
        return _approximant(8 * scale)

    with caplog.at_level(logging.INFO):
        caplog.clear()
        three_terms()
        assert caplog.text.startswith(f"INFO     {__name__}:test_approximant_size.py")
        assert caplog.text.endswith("three_terms returned 3 terms, largest center 32, 79 bits.\n")

        caplog.clear()
        far_center()
        assert caplog.text.startswith("INFO     my_test:test_approximant_size.py")
        assert caplog.text.endswith("far_center returned 2 terms, largest center 123000, 120 bits.\n")

        caplog.clear()
        described(2)
        assert caplog.text.endswith("described(2,) returned 1 terms, largest center 16, 79 bits.\n")

    with caplog.at_level(logging.CRITICAL):
        # the decorator logs at WARN, below CRITICAL
        caplog.clear()
        loud()
        assert caplog.text == ""

    with caplog.at_level(logging.INFO):
        caplog.clear()
        loud()
        assert caplog.text.startswith(f"WARNING  {__name__}")
        assert caplog.text.endswith("loud returned 1 terms, largest center 10, 79 bits.\n")

        caplog.clear()
        empty()
        assert caplog.text.endswith("empty returned an empty approximant.\n")

        with pytest.raises(RuntimeError, match="empty_strict produced an empty approximant"):
            empty_strict()


def test_fractional_centers_are_rounded(caplog: pytest.LogCaptureFixture):
    @log_approximant_size
    def jittered() -> Approximant:
        terms = [(Fraction(8195, 1024), 1), (Fraction(16001, 1000), -1)]
        return Approximant(params=HARDY, terms=terms, interval=UNIT, precision=64)

    with caplog.at_level(logging.INFO):
        jittered()
    assert caplog.text.endswith("jittered returned 2 terms, largest center 16, 64 bits.\n")


def test_calling_module():
    def wrapper() -> str:
        return _calling_module(2)

    def caller() -> str:
        return wrapper()

    assert _calling_module(0) == "mqapprox.decorators.approximant_size"
    assert _calling_module(1) == __name__
    assert caller() == __name__
    assert isinstance(_calling_module(10_000), str)


def test_stacklevel_picks_the_logger(caplog: pytest.LogCaptureFixture):
    @log_approximant_size(stacklevel=1)
    def own_module() -> Approximant:
        return _approximant(8)

    with caplog.at_level(logging.INFO):
        own_module()
    [record] = caplog.records
    assert record.name == "mqapprox.decorators.approximant_size"
