"""Recover polynomials from weighted sums of far-away multiquadric translates.

With weights b_j solving the weight system on 2k + N + 1 doubling centers,

    sum_j b_j phi_k(x - y_j) = A_{k, 2k+N}(x) + O(1 / y_1)

uniformly for x in a fixed interval. Since A_{k, 2k+N} has degree exactly N, the family A_{k,2k}, A_{k,2k+1}, ...
is a basis of the polynomials, and any polynomial is recovered by combining the weight vectors.
"""

import logging
from fractions import Fraction

import pandas as pd

from mqapprox.approximation.approximant import Approximant, Interval
from mqapprox.approximation.measurement import deviations
from mqapprox.approximation.targets import TargetFunction
from mqapprox.centers import CenterSet, ScatteredSequence, select_centers
from mqapprox.constants import DEFAULT_GRID_POINTS
from mqapprox.decorators.approximant_size import log_approximant_size
from mqapprox.expansion import ConvergenceThresholdError, MultiquadricParams, expansion_polynomial
from mqapprox.polynomials import RationalPolynomial
from mqapprox.scalars import Real, required_precision_bits, to_fraction
from mqapprox.vandermonde import solve_weights_exact

__all__ = [
    "a_basis_decompose",
    "approximate_polynomial",
    "recover_expansion_polynomial",
    "recovery_defect_table",
]

logger = logging.getLogger(__name__)


def _check_threshold(params: MultiquadricParams, interval: Interval, y_1: Fraction) -> None:
    threshold = params.threshold(interval.max_abs)
    if y_1 < threshold:
        raise ConvergenceThresholdError(
            f"The smallest center {y_1} is below the convergence threshold {threshold} "
            f"for [{interval.a}, {interval.b}]."
        )


def _planned_precision(params: MultiquadricParams, N: int, y_max: Fraction) -> int:
    return required_precision_bits(params.k, N, max(y_max, Fraction(1)))


@log_approximant_size(level=logging.DEBUG)
def recover_expansion_polynomial(
    params: MultiquadricParams,
    N: int,
    centers: CenterSet,
    interval: Interval,
    precision: int | None = None,
) -> Approximant:
    """Build sum_j b_j phi_k(x - y_j), which approximates A_{k, 2k+N} on the interval.

    Args:
        params: The multiquadric.
        N: Degree of the recovered polynomial.
        centers: Exactly 2k + N + 1 doubling centers.
        interval: Where the approximation is meant to hold.
        precision: Working precision in bits; planned from k, N and the largest center when omitted.

    Raises:
        ConvergenceThresholdError: If the smallest center is below 4 (max(|a|, |b|) + c).
        ValueError: If the number of centers is not 2k + N + 1.
    """
    _check_threshold(params, interval, centers.smallest)
    weights = solve_weights_exact(centers, params.k, N)
    return Approximant(
        params=params,
        terms=zip(weights.centers, weights.weights),
        interval=interval,
        precision=precision or _planned_precision(params, N, centers.largest),
    )


def a_basis_decompose(params: MultiquadricParams, p: RationalPolynomial) -> list[Fraction]:
    """Coefficients c_0, ..., c_n with p = sum_N c_N A_{k, 2k+N}, by back-substitution from the top degree.

    The zero polynomial decomposes into an empty list.
    """
    remainder = p
    coefficients = [Fraction(0)] * (p.degree + 1)
    for N in range(p.degree, -1, -1):
        basis = expansion_polynomial(params, 2 * params.k + N)
        coefficients[N] = remainder[N] / basis.leading
        remainder = remainder - basis * coefficients[N]
    assert remainder.is_zero(), "back-substitution leaves no remainder"
    return coefficients


@log_approximant_size(level=logging.DEBUG)
def approximate_polynomial(
    params: MultiquadricParams,
    p: RationalPolynomial,
    interval: Interval,
    seq: ScatteredSequence,
    y_min: Real,
    precision: int | None = None,
) -> Approximant:
    """Approximate a polynomial of degree n by 2k + n + 1 translates.

    One doubling center set is selected from the sequence; the weight vector for each A_{k, 2k+N} is solved on its
    first 2k + N + 1 centers and the vectors are combined with the coefficients of ``a_basis_decompose``.

    Raises:
        ConvergenceThresholdError: If y_min is below 4 (max(|a|, |b|) + c).
        SequenceExhaustedError: If the sequence has too few points beyond y_min.
    """
    y_min = to_fraction(y_min)
    _check_threshold(params, interval, y_min)
    basis_coefficients = a_basis_decompose(params, p)
    if not basis_coefficients:
        return Approximant(
            params=params, terms=(), interval=interval, precision=precision or _planned_precision(params, 0, y_min)
        )
    n = len(basis_coefficients) - 1
    centers = select_centers(seq, 2 * params.k + n + 1, y_min)
    coefficients = [Fraction(0)] * len(centers)
    for N, c_N in enumerate(basis_coefficients):
        if c_N == 0:
            continue
        weights = solve_weights_exact(centers.prefix(2 * params.k + N + 1), params.k, N)
        for j, b in enumerate(weights.weights):
            coefficients[j] += c_N * b
    return Approximant(
        params=params,
        terms=zip(centers, coefficients),
        interval=interval,
        precision=precision or _planned_precision(params, n, centers.largest),
    )


def recovery_defect_table(
    params: MultiquadricParams,
    N: int,
    seq: ScatteredSequence,
    interval: Interval,
    y_min: Real,
    doublings: int = 4,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> pd.DataFrame:
    """Tabulate the recovery defect against A_{k, 2k+N} while y_min doubles.

    Returns:
        One row per y_min with columns ``y1``, ``y_max``, ``precision_bits``, ``defect_at_a`` (signed defect at the
        left endpoint), ``sup_defect`` (grid sup over the interval) and ``ratio`` (previous sup defect over this
        one; NaN in the first row).
    """
    target = TargetFunction.from_polynomial(expansion_polynomial(params, 2 * params.k + N))
    y_1 = to_fraction(y_min)
    rows = []
    for _ in range(doublings + 1):
        centers = select_centers(seq, 2 * params.k + N + 1, y_1)
        appr = recover_expansion_polynomial(params, N, centers, interval)
        ctx = appr.context
        rows.append(
            {
                "y1": centers.smallest,
                "y_max": centers.largest,
                "precision_bits": appr.precision,
                "defect_at_a": float(appr.value_at(interval.a) - target(ctx, interval.a)),
                "sup_defect": float(deviations(appr, target, interval, grid_points).max()),
            }
        )
        y_1 = 2 * centers.smallest
    table = pd.DataFrame(rows)
    table["ratio"] = table["sup_defect"].shift(1) / table["sup_defect"]
    logger.info(f"Recovery of A[{params.k},{2 * params.k + N}] over {doublings} doublings of y_min from {y_min}.")
    return table
