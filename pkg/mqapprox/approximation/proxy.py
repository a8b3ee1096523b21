"""Chebyshev interpolation as an explicit polynomial proxy for a continuous target."""

import logging

from mqapprox.approximation.approximant import Interval
from mqapprox.approximation.targets import TargetFunction
from mqapprox.constants import DEFAULT_GRID_POINTS, PROXY_PRECISION_BITS
from mqapprox.polynomials import RationalPolynomial
from mqapprox.scalars import to_fraction, to_mpf, working_context

__all__ = [
    "chebyshev_proxy",
    "proxy_defect",
]

logger = logging.getLogger(__name__)


def _chebyshev_basis(interval: Interval, n: int) -> list[RationalPolynomial]:
    """T_0, ..., T_n composed with the affine map of the interval onto [-1, 1], exactly."""
    scale = 2 / interval.length
    affine = RationalPolynomial((-(interval.a + interval.b) / interval.length, scale))
    basis = [RationalPolynomial.constant(1), affine]
    while len(basis) <= n:
        basis.append(affine * basis[-1] * 2 - basis[-2])
    return basis[: n + 1]


def chebyshev_proxy(
    f: TargetFunction,
    interval: Interval,
    n: int,
    precision: int = PROXY_PRECISION_BITS,
) -> RationalPolynomial:
    """Interpolate f at the n + 1 Chebyshev points of the interval.

    Coefficients in the Chebyshev basis come from the discrete orthogonality relation
    c_m = 2 / (n + 1) sum_i f(x_i) cos(m theta_i) with theta_i = pi (i + 1/2) / (n + 1), halving c_0. Each c_m is
    rounded once to an exact rational and the Chebyshev basis is expanded exactly, so the returned monomial
    coefficients carry no further rounding.

    Raises:
        ValueError: If n is negative.
        ExpressionEvaluationError: If f cannot be evaluated at a node.
    """
    if n < 0:
        raise ValueError(f"The proxy degree must be nonnegative, got {n}.")
    ctx = working_context(precision)
    count = n + 1
    half_length = to_mpf(ctx, interval.length / 2)
    midpoint = to_mpf(ctx, interval.midpoint)
    angles = [ctx.pi * (i + ctx.mpf(1) / 2) / count for i in range(count)]
    values = [f(ctx, midpoint + half_length * ctx.cos(theta)) for theta in angles]
    proxy = RationalPolynomial.zero()
    for m, basis in enumerate(_chebyshev_basis(interval, n)):
        c_m = 2 * ctx.fsum(value * ctx.cos(m * theta) for value, theta in zip(values, angles)) / count
        if m == 0:
            c_m /= 2
        proxy = proxy + basis * to_fraction(c_m)
    logger.debug(f"Interpolated {f.description} at {count} Chebyshev points of [{interval.a}, {interval.b}].")
    return proxy


def proxy_defect(
    f: TargetFunction,
    proxy: RationalPolynomial,
    interval: Interval,
    grid_points: int = DEFAULT_GRID_POINTS,
    precision: int = PROXY_PRECISION_BITS,
) -> float:
    """Grid sup of |f - proxy|, with the proxy evaluated exactly at the rational grid points."""
    ctx = working_context(precision)
    return float(max(abs(f(ctx, x) - to_mpf(ctx, proxy(x))) for x in interval.grid(grid_points)))
