"""Adaptive construction of a multiquadric approximant for a continuous target.

The error budget epsilon is split in half. The smallest Chebyshev proxy degree whose measured defect is below
epsilon / 2 fixes the polynomial; the smallest center is then doubled until the measured error of the translate
approximation of that polynomial, against the original target, is below epsilon.
"""

import logging
import math
from fractions import Fraction
from typing import Iterable

import pandas as pd

from mqapprox.approximation.approximant import Approximant, Interval
from mqapprox.approximation.measurement import ErrorReport, measure
from mqapprox.approximation.proxy import chebyshev_proxy, proxy_defect
from mqapprox.approximation.recovery import approximate_polynomial
from mqapprox.approximation.targets import TargetFunction
from mqapprox.centers import IntegerLattice, ScatteredSequence
from mqapprox.constants import DEFAULT_GRID_POINTS, DEGREE_CAP, DOUBLING_CAP
from mqapprox.expansion import MultiquadricParams
from mqapprox.polynomials import RationalPolynomial

__all__ = [
    "CapExceededError",
    "approximate_function",
    "choose_proxy",
    "sweep_degree",
    "sweep_y_min",
]

logger = logging.getLogger(__name__)


class CapExceededError(RuntimeError):
    """Raised when the requested accuracy is not reached within the degree or doubling cap."""

    pass


def choose_proxy(
    f: TargetFunction,
    interval: Interval,
    tolerance: float,
    grid_points: int = DEFAULT_GRID_POINTS,
    degree_cap: int = DEGREE_CAP,
) -> tuple[RationalPolynomial, float]:
    """The lowest-degree Chebyshev proxy with measured defect below tolerance, and that defect.

    Raises:
        CapExceededError: If no degree up to degree_cap is accurate enough.
    """
    for n in range(degree_cap + 1):
        proxy = chebyshev_proxy(f, interval, n)
        defect = proxy_defect(f, proxy, interval, grid_points)
        logger.debug(f"Proxy degree {n}: defect {defect:.3e}.")
        if defect < tolerance:
            return proxy, defect
    raise CapExceededError(f"No Chebyshev proxy of degree <= {degree_cap} is within {tolerance} of {f.description}.")


def approximate_function(
    f: TargetFunction,
    interval: Interval,
    epsilon: float,
    params: MultiquadricParams,
    seq: ScatteredSequence | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    lp_exponents: Iterable[float] = (1, 2),
    degree_cap: int = DEGREE_CAP,
    doubling_cap: int = DOUBLING_CAP,
    precision_multiplier: int = 1,
    threads: int = 1,
) -> tuple[Approximant, ErrorReport]:
    """Build translates of phi_k whose measured sup error against f on the interval is below epsilon.

    Args:
        f: The target function.
        interval: The approximation interval.
        epsilon: The sup-error target, measured on the grid.
        params: The multiquadric.
        seq: Where centers come from; the integers by default.
        grid_points: Grid size for all measurements.
        lp_exponents: L^p errors to include in the report.
        degree_cap: Largest proxy degree tried.
        doubling_cap: Largest number of doublings of the smallest center.
        precision_multiplier: Scales the planned working precision of each candidate.
        threads: Worker threads for grid evaluation of candidates.

    Raises:
        ValueError: If epsilon is not positive.
        CapExceededError: If either cap is reached first.
        SequenceExhaustedError: If a finite sequence runs out of centers.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}.")
    if precision_multiplier < 1:
        raise ValueError(f"precision_multiplier must be at least 1, got {precision_multiplier}.")
    seq = seq if seq is not None else IntegerLattice()
    lp_exponents = tuple(lp_exponents)
    proxy, defect = choose_proxy(f, interval, epsilon / 2, grid_points, degree_cap)
    logger.debug(f"Using proxy of degree {proxy.degree} with defect {defect:.3e}.")

    y_min = math.ceil(params.threshold(interval.max_abs))
    for doubling in range(doubling_cap + 1):
        appr = approximate_polynomial(params, proxy, interval, seq, y_min)
        if precision_multiplier != 1:
            appr = appr.with_precision(appr.precision * precision_multiplier)
        report = measure(appr, f, interval, grid_points, lp_exponents, threads)
        logger.debug(f"Doubling {doubling}: y_min {y_min}, {appr.precision} bits, sup error {report.sup_error:.3e}.")
        if report.sup_error < epsilon:
            logger.info(
                f"Approximated {f.description} to {report.sup_error:.3e} with {len(appr.terms)} translates, "
                f"proxy degree {proxy.degree}, y_min {y_min}."
            )
            return appr, report
        y_min *= 2
    raise CapExceededError(
        f"Sup error stayed at or above {epsilon} after {doubling_cap} doublings of y_min; "
        f"raise the cap or loosen epsilon."
    )


def _error_row(report: ErrorReport) -> dict[str, float]:
    return {"grid_sup_error": report.sup_error, "l1_error": report.lp_errors[1], "l2_error": report.lp_errors[2]}


def sweep_y_min(
    f: TargetFunction,
    interval: Interval,
    epsilon: float,
    params: MultiquadricParams,
    seq: ScatteredSequence,
    steps: int,
    y_min: Fraction | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    threads: int = 1,
) -> pd.DataFrame:
    """Errors of the translate approximation of a fixed proxy while y_min doubles.

    The proxy is the one ``approximate_function`` would use for epsilon. Rows are keyed by the selected y_1.
    """
    proxy, _ = choose_proxy(f, interval, epsilon / 2, grid_points)
    start = y_min if y_min is not None else Fraction(math.ceil(params.threshold(interval.max_abs)))
    rows = []
    for step in range(steps):
        appr = approximate_polynomial(params, proxy, interval, seq, start * 2**step)
        report = measure(appr, f, interval, grid_points, (1, 2), threads)
        y_1 = appr.centers[0] if appr.terms else start * 2**step
        rows.append({"y1": y_1, **_error_row(report)})
    return pd.DataFrame(rows, columns=["y1", "grid_sup_error", "l1_error", "l2_error"])


def sweep_degree(
    f: TargetFunction,
    interval: Interval,
    params: MultiquadricParams,
    seq: ScatteredSequence,
    steps: int,
    y_min: Fraction | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    threads: int = 1,
) -> pd.DataFrame:
    """Errors of the translate approximation of the Chebyshev proxies of degree 0, ..., steps - 1 at a fixed y_min."""
    start = y_min if y_min is not None else Fraction(math.ceil(params.threshold(interval.max_abs)))
    rows = []
    for degree in range(steps):
        proxy = chebyshev_proxy(f, interval, degree)
        appr = approximate_polynomial(params, proxy, interval, seq, start)
        report = measure(appr, f, interval, grid_points, (1, 2), threads)
        rows.append({"degree": degree, **_error_row(report)})
    return pd.DataFrame(rows, columns=["degree", "grid_sup_error", "l1_error", "l2_error"])
