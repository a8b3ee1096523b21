import logging
import textwrap

import pytest

from mqapprox.demo import _approximation, _recovery

EXPECTED_LOG = """
    DEBUG    mqapprox.centers:centers.py:290 Selected 3 centers from 8 to 32.
    DEBUG    mqapprox.vandermonde:vandermonde.py:142 Solved the weight system for k=1, N=0 on 3 centers from 8 to 32.
    DEBUG    mqapprox.demo:demo.py:27 recover_expansion_polynomial returned 3 terms, largest center 32, 79 bits.
    """


def test__recovery(caplog: pytest.LogCaptureFixture):
    with caplog.at_level(logging.DEBUG):
        _recovery()
        assert caplog.text.strip() == textwrap.dedent(EXPECTED_LOG).strip()


def test__approximation(caplog: pytest.LogCaptureFixture):
    with caplog.at_level(logging.INFO):
        appr, report = _approximation(epsilon=1e-2)
    assert report.sup_error < 1e-2
    [record] = caplog.records
    assert record.name == "mqapprox.approximation.construction"
    assert record.getMessage().startswith("Approximated exp to ")
    assert f"with {len(appr.terms)} translates" in record.getMessage()
