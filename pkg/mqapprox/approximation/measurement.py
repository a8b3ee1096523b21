"""Grid-based sup-norm and L^p error measurement."""

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable

import numpy as np
from attrs import field, frozen
from attrs.validators import ge, instance_of

from mqapprox.approximation.approximant import Approximant, Interval
from mqapprox.approximation.targets import TargetFunction
from mqapprox.constants import DEFAULT_GRID_POINTS

__all__ = [
    "ErrorReport",
    "deviations",
    "lp_error",
    "measure",
    "sup_error",
]

logger = logging.getLogger(__name__)


@frozen(kw_only=True)
class ErrorReport:
    """Errors of one approximant against its target, measured on an equispaced grid.

    The true sup over the interval may exceed the grid sup.
    """

    sup_error: float
    """max_i |f(x_i) - s(x_i)| over the grid."""

    grid_points: int = field(validator=[instance_of(int), ge(2)])
    """Number of grid points, both endpoints included."""

    lp_errors: dict[float, float] = field(factory=dict)
    """Trapezoid L^p errors keyed by the exponent p."""

    def holder_bound(self, p: float, interval: Interval) -> float:
        """(b - a)^(1/p) times the sup error, which bounds the L^p error."""
        return float(interval.length) ** (1 / p) * self.sup_error


def _check_grid(grid_points: int) -> None:
    if grid_points < 2:
        raise ValueError(f"grid_points must be at least 2, got {grid_points}.")


def deviations(
    appr: Approximant,
    f: TargetFunction,
    interval: Interval | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    threads: int = 1,
) -> np.ndarray:
    """|f(x_i) - s(x_i)| on the equispaced grid, computed at the approximant's precision and rounded to floats.

    Args:
        appr: The approximant s.
        f: The target function; must be reentrant when threads > 1.
        interval: The measurement interval, defaulting to the approximant's.
        grid_points: Number of grid points including both endpoints.
        threads: Worker threads for grid evaluation.

    Raises:
        ValueError: If grid_points < 2.
    """
    _check_grid(grid_points)
    interval = interval or appr.interval
    ctx = appr.context
    grid = interval.grid(grid_points)

    def deviation(x: Fraction) -> float:
        return float(abs(f(ctx, x) - appr.value_at(x)))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(deviation, grid))
    else:
        values = [deviation(x) for x in grid]
    return np.asarray(values, dtype=float)


def sup_error(
    appr: Approximant,
    f: TargetFunction,
    interval: Interval | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    threads: int = 1,
) -> float:
    """Maximum absolute deviation over an equispaced grid including both endpoints.

    Raises:
        ValueError: If grid_points < 2.
    """
    return float(deviations(appr, f, interval, grid_points, threads).max())


def _lp_from_deviations(values: np.ndarray, interval: Interval, p: float) -> float:
    if p < 1:
        raise ValueError(f"The L^p exponent must be at least 1, got {p}.")
    step = float(interval.length) / (len(values) - 1)
    return float(np.trapezoid(values**p, dx=step) ** (1 / p))


def lp_error(
    appr: Approximant,
    f: TargetFunction,
    interval: Interval | None = None,
    p: float = 2,
    grid_points: int = DEFAULT_GRID_POINTS,
    threads: int = 1,
) -> float:
    """Composite-trapezoid approximation of (int_a^b |f - s|^p)^(1/p).

    Since the trapezoid weights sum to b - a, the result never exceeds (b - a)^(1/p) times the grid sup error.

    Raises:
        ValueError: If p < 1 or grid_points < 2.
    """
    interval = interval or appr.interval
    return _lp_from_deviations(deviations(appr, f, interval, grid_points, threads), interval, p)


def measure(
    appr: Approximant,
    f: TargetFunction,
    interval: Interval | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    lp_exponents: Iterable[float] = (1, 2),
    threads: int = 1,
) -> ErrorReport:
    """Evaluate the grid once and report the sup error and every requested L^p error.

    Raises:
        ValueError: If an exponent is below 1 or grid_points < 2.
    """
    interval = interval or appr.interval
    values = deviations(appr, f, interval, grid_points, threads)
    report = ErrorReport(
        sup_error=float(values.max()),
        grid_points=grid_points,
        lp_errors={p: _lp_from_deviations(values, interval, p) for p in lp_exponents},
    )
    logger.debug(f"Measured {report} for {f.description} on [{interval.a}, {interval.b}].")
    return report
