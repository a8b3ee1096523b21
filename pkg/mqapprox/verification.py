"""Property suites that check the identities behind the construction.

Each suite returns a frame with one row per check and the columns ``suite``, ``case``, ``passed`` and ``detail``.
"""

import logging
import math
from fractions import Fraction
from typing import Any, Callable, Iterable

import numpy as np
import pandas as pd

from mqapprox.approximation.approximant import Interval
from mqapprox.approximation.construction import approximate_function
from mqapprox.approximation.recovery import recovery_defect_table
from mqapprox.approximation.targets import TargetFunction
from mqapprox.centers import CenterSet, IntegerLattice
from mqapprox.constants import BOUNDEDNESS_BOUND, DEFAULT_GRID_POINTS
from mqapprox.expansion import (
    MultiquadricParams,
    coefficient_sum,
    expansion_coefficient_oracle,
    expansion_polynomial,
    multiquadric_eval,
    odd_case_reduced_sum,
    truncated_expansion_eval,
    verify_coefficient_lemma,
)
from mqapprox.polynomials import RationalPolynomial
from mqapprox.scalars import alternating_binomial_sum, alternating_binomial_sum_by_differentiation
from mqapprox.vandermonde import (
    closed_form_weights,
    normalized_weights,
    sign_corrected_magnitudes,
    solve_weights_exact,
)

__all__ = [
    "ALIASES",
    "SUITES",
    "check_binomial_sums",
    "check_coefficient_pattern",
    "check_expansion",
    "check_hoelder",
    "check_recovery",
    "check_vandermonde",
    "random_doubling_centers",
    "random_rational_polynomial",
    "run_suite",
]

logger = logging.getLogger(__name__)

SUITE = "suite"
CASE = "case"
PASSED = "passed"
DETAIL = "detail"

RATIO_PRECISION_BITS = 320
"""Working precision for truncation defects, which fall far below the size of phi_k itself."""


def _frame(suite: str, rows: Iterable[tuple[str, bool, str]]) -> pd.DataFrame:
    frame = pd.DataFrame(list(rows), columns=[CASE, PASSED, DETAIL])
    frame.insert(0, SUITE, suite)
    frame[PASSED] = frame[PASSED].astype(bool)
    failures = int((~frame[PASSED]).sum())
    if failures:
        logger.warning(f"Suite {suite}: {failures} of {len(frame)} checks failed.")
    else:
        logger.info(f"Suite {suite}: all {len(frame)} checks passed.")
    return frame


def random_rational_polynomial(rng: np.random.Generator, degree: int, bound: int = 50) -> RationalPolynomial:
    """A polynomial of exactly the given degree with small random rational coefficients."""
    coefficients = [Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 20))) for _ in range(degree)]
    leading = int(rng.integers(1, bound + 1)) * int(rng.choice([-1, 1]))
    coefficients.append(Fraction(leading, int(rng.integers(1, 20))))
    return RationalPolynomial(coefficients)


def random_doubling_centers(rng: np.random.Generator, size: int) -> CenterSet:
    """Rational centers with y_1 in (1, 66] and each ratio y_j / y_{j-1} in [2, 3]."""
    centers = [Fraction(int(rng.integers(1, 65)), int(rng.integers(1, 5))) + 1]
    while len(centers) < size:
        centers.append(centers[-1] * (2 + Fraction(int(rng.integers(0, 9)), 8)))
    return CenterSet(centers)


def check_binomial_sums(n_max: int = 12, samples: int = 200, seed: int = 0) -> pd.DataFrame:
    """Alternating binomial sums of random polynomials, both directly and by differentiation.

    For each N, ``samples`` polynomials of degree below N must sum to zero and ``samples`` of degree N must sum to
    (-1)^N N! times their leading coefficient.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for N in range(1, n_max + 1):
        low = [random_rational_polynomial(rng, int(rng.integers(0, N))) for _ in range(samples)]
        top = [random_rational_polynomial(rng, N) for _ in range(samples)]
        sign_factorial = (-1) ** N * math.factorial(N)
        vanish = all(alternating_binomial_sum(N, p) == 0 for p in low)
        factorial = all(alternating_binomial_sum(N, p) == sign_factorial * p.leading for p in top)
        routes = all(
            alternating_binomial_sum(N, p) == alternating_binomial_sum_by_differentiation(N, p) for p in low + top
        )
        rows.append((f"N={N} degree<N", vanish, f"{samples} polynomials"))
        rows.append((f"N={N} degree=N", factorial, f"{samples} polynomials"))
        rows.append((f"N={N} differentiation", routes, f"{2 * samples} polynomials"))
    return _frame("binomial", rows)


def check_coefficient_pattern(
    k_max: int = 4,
    j_max: int | None = None,
    j_span: int = 12,
    shapes: Iterable[Fraction] = (Fraction(1), Fraction(2), Fraction(1, 3)),
) -> pd.DataFrame:
    """Vanishing and leading coefficients of A_{k,j} for j >= 2k, plus the odd-case reduction.

    Args:
        k_max: Largest order k.
        j_max: Largest index j; defaults to 2k + j_span for each k.
        j_span: How far past 2k to check when j_max is not given.
        shapes: Shape parameters c.
    """
    shapes = tuple(shapes)
    rows = []
    for k in range(1, k_max + 1):
        top = j_max if j_max is not None else 2 * k + j_span
        for c in shapes:
            params = MultiquadricParams(k=k, c=c)
            for j in range(2 * k, top + 1):
                report = verify_coefficient_lemma(params, j)
                rows.append((f"k={k} c={c} j={j}", report.passed, str(report)))
        for m in range((top - 2 * k - 1) // 2 + 1):
            j = 2 * k + 2 * m + 1
            matches = all(odd_case_reduced_sum(k, m, l) == coefficient_sum(k, j, l) for l in range(k + 1))
            rows.append((f"k={k} j={j} odd reduction", matches, f"l = 0..{k}"))
    return _frame("coefficients", rows)


def _first_term_dominates(params: MultiquadricParams, x: Fraction, J: int) -> bool:
    lead = abs(expansion_polynomial(params, J + 1)(x))
    return lead != 0 and abs(expansion_polynomial(params, J + 2)(x)) <= 8 * lead


def check_expansion(
    orders: Iterable[int] = (1, 2, 3),
    shapes: Iterable[Fraction] = (Fraction(1), Fraction(1, 2)),
    points: Iterable[Fraction] = (Fraction(-1), Fraction(3, 10), Fraction(2)),
    truncations: Iterable[int] = (2, 4, 8),
    ys: Iterable[int] = (64, 128, 256),
) -> pd.DataFrame:
    """Compare truncated expansions with direct evaluation of phi_k.

    The truncation defect at y is dominated by A_{J+1}(x) y^(2k - 2 - J), so halving y scales it by 2^e with
    e = J + 2 - 2k. Ratios must lie in [2^(e-1), 2^(e+2)]; points where A_{J+1}(x) does not dominate A_{J+2}(x)
    are left out. Each A_{k,j} is also compared with its generating-function form.
    """
    points = tuple(points)
    truncations = tuple(truncations)
    ys = tuple(ys)
    rows = []
    for k in orders:
        for c in shapes:
            params = MultiquadricParams(k=k, c=c)
            j_top = max(truncations) + 2
            agree = all(expansion_polynomial(params, j) == expansion_coefficient_oracle(params, j) for j in range(j_top))
            rows.append((f"k={k} c={c} generating function", agree, f"j = 0..{j_top - 1}"))
            for x in points:
                for J in truncations:
                    if not _first_term_dominates(params, x, J):
                        continue
                    e = J + 2 - 2 * k
                    for y in ys:
                        near = _truncation_defect(params, x, y, J)
                        far = _truncation_defect(params, x, 2 * y, J)
                        ratio = near / far
                        passed = 2.0 ** (e - 1) <= ratio <= 2.0 ** (e + 2)
                        detail = f"ratio {ratio:.4g}, 2^e = {2.0**e:g}"
                        rows.append((f"k={k} c={c} x={x} J={J} y={y}", passed, detail))
    return _frame("expansion", rows)


def _truncation_defect(params: MultiquadricParams, x: Fraction, y: int, J: int) -> float:
    exact = multiquadric_eval(params, x - y, RATIO_PRECISION_BITS)
    truncated = truncated_expansion_eval(params, x, y, J, RATIO_PRECISION_BITS)
    return abs(float(exact - truncated))


def check_vandermonde(cases: int = 100, k_max: int = 3, n_max: int = 6, seed: int = 0) -> pd.DataFrame:
    """Closed-form weights against exact elimination on random doubling center sets.

    Also checks that normalized weights stay below BOUNDEDNESS_BOUND, that the sign-corrected closed form gives
    the weight magnitudes, and the spot value for centers (8, 16, 32).
    """
    rng = np.random.default_rng(seed)
    rows = []
    spot = solve_weights_exact([8, 16, 32], 1, 0).weights
    expected = (Fraction(64, 3), Fraction(-32), Fraction(32, 3))
    rows.append(("spot y=(8,16,32) k=1 N=0", spot == expected, ", ".join(str(b) for b in spot)))
    for case in range(cases):
        k = int(rng.integers(1, k_max + 1))
        N = int(rng.integers(0, n_max + 1))
        centers = random_doubling_centers(rng, 2 * k + N + 1)
        exact = solve_weights_exact(centers, k, N)
        closed = closed_form_weights(centers, k, N)
        largest = float(max(abs(value) for value in normalized_weights(exact)))
        magnitudes = sign_corrected_magnitudes(centers, k, N) == tuple(abs(b) for b in exact.weights)
        label = f"case {case} k={k} N={N} y1={centers.smallest}"
        rows.append((f"{label} closed form", closed.weights == exact.weights and exact.satisfies_system(), ""))
        rows.append((f"{label} bounded", largest < BOUNDEDNESS_BOUND, f"max |c_j| = {largest:.6f}"))
        rows.append((f"{label} magnitudes", magnitudes, ""))
    return _frame("vandermonde", rows)


def check_hoelder(
    target: str = "exp",
    interval: Interval = Interval(0, 1),
    epsilon: float = 1e-3,
    orders: Iterable[int] = (1, 2),
    c: Fraction = Fraction(1),
    exponents: Iterable[float] = (1, 2, 4),
    grid_points: int = DEFAULT_GRID_POINTS,
    tolerance: float = 1e-9,
) -> pd.DataFrame:
    """Run the full construction and check each L^p error against (b - a)^(1/p) times the sup error."""
    f = TargetFunction.from_text(target)
    exponents = tuple(exponents)
    rows = []
    for k in orders:
        params = MultiquadricParams(k=k, c=c)
        _, report = approximate_function(f, interval, epsilon, params, IntegerLattice(), grid_points, exponents)
        rows.append((f"k={k} sup error", report.sup_error < epsilon, f"{report.sup_error:.6e}"))
        for p in exponents:
            bound = report.holder_bound(p, interval)
            value = report.lp_errors[p]
            rows.append((f"k={k} p={p}", value <= bound + tolerance, f"{value:.6e} <= {bound:.6e}"))
    return _frame("hoelder", rows)


def check_recovery(
    params: MultiquadricParams = MultiquadricParams(k=1, c=1),
    N: int = 0,
    interval: Interval = Interval(0, 1),
    y_min: int = 8,
    doublings: int = 4,
    point_tolerance: float = 0.005,
    ratio_band: tuple[float, float] = (1.5, 2.7),
) -> pd.DataFrame:
    """Recover A_{k, 2k+N} over doubling y_min on the integers.

    Checks the defect at the left endpoint for the first y_min and, over the interval, that the sup defect
    decreases at every doubling with ratio inside ``ratio_band``.
    """
    table = recovery_defect_table(params, N, IntegerLattice(), interval, y_min, doublings)
    first = table.iloc[0]
    rows = [(f"defect at x={interval.a}, y1={first['y1']}", abs(first["defect_at_a"]) <= point_tolerance, "")]
    low, high = ratio_band
    for _, row in table.iloc[1:].iterrows():
        ratio = float(row["ratio"])
        rows.append((f"y1={row['y1']} ratio", low <= ratio <= high, f"{ratio:.4f}"))
    return _frame("recovery", rows)


SUITES: dict[str, Callable[..., pd.DataFrame]] = {
    "binomial": check_binomial_sums,
    "coefficients": check_coefficient_pattern,
    "expansion": check_expansion,
    "vandermonde": check_vandermonde,
    "hoelder": check_hoelder,
    "recovery": check_recovery,
}
"""Suite runners by name."""

ALIASES = {"lemma": "coefficients", "lemma21": "binomial", "lemma41": "coefficients"}


def run_suite(name: str, **options: Any) -> pd.DataFrame:
    """Run a suite by name (or alias), passing options through.

    Raises:
        KeyError: If the suite is unknown.
    """
    name = ALIASES.get(name, name)
    if name not in SUITES:
        raise KeyError(f"Unknown suite {name!r}; choose from {sorted(SUITES) + sorted(ALIASES)}.")
    return SUITES[name](**options)
