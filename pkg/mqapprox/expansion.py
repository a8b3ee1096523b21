"""Large-y expansion of the generalized multiquadric.

For y large compared to |x| and c,

    phi_k(x - y) = y^(2k - 1) * sum_{j >= 0} A_{k,j}(x) / y^j,

where each A_{k,j} is a polynomial in x with exact rational coefficients. For j >= 2k the polynomial A_{k,j} has
degree exactly j - 2k: its coefficients of x^(j - 2l) vanish for l < k and the coefficient of x^(j - 2k) has
magnitude c^(2k) C(k - 1/2, k).
"""

import functools
import logging
import math
from fractions import Fraction
from typing import Any

from attrs import field, frozen
from attrs.validators import ge, gt, instance_of
from mpmath.ctx_mp import MPContext
from typing_extensions import Self

from mqapprox.constants import MIN_PRECISION_BITS, THRESHOLD_FACTOR
from mqapprox.polynomials import RationalPolynomial
from mqapprox.scalars import (
    AdjustableReal,
    LemmaHypothesisError,
    Real,
    generalized_binomial,
    half_integer_binomial,
    monic_odd_ratio,
    to_fraction,
    to_mpf,
    working_context,
)

__all__ = [
    "ConvergenceThresholdError",
    "ExpansionTable",
    "LemmaReport",
    "MultiquadricParams",
    "coefficient",
    "coefficient_sum",
    "expansion_coefficient_oracle",
    "expansion_polynomial",
    "leading_coefficient",
    "multiquadric_eval",
    "odd_case_reduced_sum",
    "phi_in",
    "truncated_expansion_eval",
    "verify_coefficient_lemma",
]

logger = logging.getLogger(__name__)


class ConvergenceThresholdError(ValueError):
    """Raised when y is too small for the expansion in powers of 1/y to converge."""

    pass


@frozen
class MultiquadricParams:
    """Order and shape parameter of phi_k(t) = (t^2 + c^2)^(k - 1/2)."""

    k: int = field(validator=[instance_of(int), ge(1)])
    """The multiquadric order; k = 1 is Hardy's multiquadric."""

    c: Fraction = field(converter=to_fraction, validator=gt(0))
    """The shape parameter, an exact positive rational."""

    @property
    def lemma_constant(self) -> Fraction:
        """The value c^(2k) C(k - 1/2, k) of the leading coefficient of A_{k,j} for j >= 2k."""
        return self.c ** (2 * self.k) * half_integer_binomial(self.k, self.k)

    def threshold(self, x_bound: Real) -> Fraction:
        """Smallest y for which the expansion is evaluated at any |x| <= x_bound."""
        return THRESHOLD_FACTOR * (abs(to_fraction(x_bound)) + self.c)


def _ceil_half(j: int) -> int:
    return (j + 1) // 2


@functools.lru_cache(maxsize=None)
def expansion_polynomial(params: MultiquadricParams, j: int) -> RationalPolynomial:
    """Return A_{k,j}(x) from the triple sum over n, l of the binomial-series expansion.

    A_{k,j}(x) = (-1)^j sum_{n=ceil(j/2)}^{j} sum_{l=0}^{j-n}
    C(k - 1/2, n) C(n, j - n) C(j - n, l) 2^(2n - j) c^(2l) x^(j - 2l).

    Raises:
        ValueError: If j is negative.
    """
    if j < 0:
        raise ValueError(f"j must be nonnegative, got {j}.")
    k, c = params.k, params.c
    coefficients = [Fraction(0)] * (j + 1)
    for n in range(_ceil_half(j), j + 1):
        outer = half_integer_binomial(k, n) * math.comb(n, j - n) * 2 ** (2 * n - j)
        for l in range(j - n + 1):
            coefficients[j - 2 * l] += outer * math.comb(j - n, l) * c ** (2 * l)
    sign = (-1) ** j
    return RationalPolynomial([sign * value for value in coefficients])


def coefficient_sum(k: int, j: int, l: int) -> Fraction:
    """The inner sum over n multiplying c^(2l) x^(j - 2l), before the (-1)^j prefactor.

    sum_{n=ceil(j/2)}^{j-l} C(k - 1/2, n) C(n, j - n) C(j - n, l) 2^(2n - j)
    """
    return sum(
        (
            half_integer_binomial(k, n) * math.comb(n, j - n) * math.comb(j - n, l) * 2 ** (2 * n - j)
            for n in range(_ceil_half(j), j - l + 1)
        ),
        Fraction(0),
    )


def coefficient(params: MultiquadricParams, j: int, l: int) -> Fraction:
    """Return the coefficient of x^(j - 2l) in A_{k,j}(x), summed over n for fixed l.

    Raises:
        ValueError: If l is outside 0..floor(j/2).
    """
    if not 0 <= l <= j // 2:
        raise ValueError(f"l must lie in 0..{j // 2} for j = {j}, got {l}.")
    return (-1) ** j * params.c ** (2 * l) * coefficient_sum(params.k, j, l)


def leading_coefficient(params: MultiquadricParams, j: int) -> Fraction:
    """Return the coefficient of x^(j - 2k) in A_{k,j}(x), which is its leading coefficient.

    Raises:
        LemmaHypothesisError: If j < 2k.
    """
    if j < 2 * params.k:
        raise LemmaHypothesisError(f"The degree j - 2k is defined only for j >= 2k; got j={j}, k={params.k}.")
    return coefficient(params, j, params.k)


@frozen
class LemmaReport:
    """Outcome of checking the coefficient pattern of one A_{k,j}."""

    zero_checks: tuple[bool, ...]
    """Entry l is True iff the coefficient of x^(j - 2l) is exactly zero, for l = 0..k-1."""

    leading_match: bool
    """True iff the coefficient of x^(j - 2k) has magnitude exactly c^(2k) C(k - 1/2, k)."""

    @property
    def passed(self) -> bool:
        """Whether every check holds."""
        return all(self.zero_checks) and self.leading_match


def verify_coefficient_lemma(params: MultiquadricParams, j: int) -> LemmaReport:
    """Check that A_{k,j} has degree j - 2k with positive leading coefficient c^(2k) C(k - 1/2, k).

    Raises:
        LemmaHypothesisError: If j < 2k.
    """
    if j < 2 * params.k:
        raise LemmaHypothesisError(f"The lemma applies only for j >= 2k; got j={j}, k={params.k}.")
    zero_checks = tuple(coefficient(params, j, l) == 0 for l in range(params.k))
    leading_match = coefficient(params, j, params.k) == params.lemma_constant
    report = LemmaReport(zero_checks=zero_checks, leading_match=leading_match)
    if not report.passed:
        logger.warning(f"Coefficient pattern fails for k={params.k}, c={params.c}, j={j}: {report}")
    return report


def odd_case_reduced_sum(k: int, m: int, l: int) -> Fraction:
    """Closed reduction of ``coefficient_sum(k, 2k + 2m + 1, l)`` for l <= k.

    The sum collapses to

        (-1)^(m+1) k! / (l! (k+m-l)!) C(k - 1/2, k) sum_n (-1)^n C(k+m-l, n) R(n, m),

    where R(n, m) = (2(n+m)+1)!! / (2^m (2n+1)!!) is monic of degree m in n. The alternating sum therefore vanishes
    for l < k and equals (-1)^m m! for l = k.

    Raises:
        LemmaHypothesisError: If l is outside 0..k.
    """
    if not 0 <= l <= k:
        raise LemmaHypothesisError(f"The reduction holds for 0 <= l <= k; got l={l}, k={k}.")
    top = k + m - l
    prefactor = Fraction((-1) ** (m + 1) * math.factorial(k), math.factorial(l) * math.factorial(top))
    alternating = sum((Fraction((-1) ** n * math.comb(top, n)) * monic_odd_ratio(n, m) for n in range(top + 1)))
    return prefactor * half_integer_binomial(k, k) * alternating


def expansion_coefficient_oracle(params: MultiquadricParams, j: int) -> RationalPolynomial:
    """Return A_{k,j}(x) from the generating function, independently of the triple sum.

    With t = 1/y, y^(1-2k) phi_k(x - y) = ((1 - xt)^2 + c^2 t^2)^(k - 1/2)
    = sum_l C(k - 1/2, l) c^(2l) t^(2l) (1 - xt)^(2k - 1 - 2l), and the t^j coefficient is read off directly.
    """
    k, c = params.k, params.c
    coefficients = [Fraction(0)] * (j + 1)
    for l in range(j // 2 + 1):
        power = j - 2 * l
        coefficients[power] = (
            half_integer_binomial(k, l) * c ** (2 * l) * generalized_binomial(2 * k - 1 - 2 * l, power) * (-1) ** power
        )
    return RationalPolynomial(coefficients)


@frozen
class ExpansionTable:
    """The polynomials A_{k,0}, ..., A_{k,j_max} for one parameter set."""

    params: MultiquadricParams
    """The multiquadric the expansion belongs to."""

    polys: tuple[RationalPolynomial, ...]
    """Entry j is A_{k,j}."""

    @classmethod
    def build(cls, params: MultiquadricParams, j_max: int) -> Self:
        """Compute (or fetch from the memo) every A_{k,j} with j <= j_max."""
        return cls(params=params, polys=tuple(expansion_polynomial(params, j) for j in range(j_max + 1)))

    @property
    def j_max(self) -> int:
        """The largest tabulated index."""
        return len(self.polys) - 1


def phi_in(ctx: MPContext, params: MultiquadricParams, t: Any) -> Any:
    """Evaluate phi_k(t) with the arithmetic of ``ctx``, as an integer power times a square root."""
    t = to_mpf(ctx, t)
    base = t * t + to_mpf(ctx, params.c**2)
    return base ** (params.k - 1) * ctx.sqrt(base)


def multiquadric_eval(params: MultiquadricParams, t: Real, precision: int) -> AdjustableReal:
    """Evaluate phi_k(t) = (t^2 + c^2)^(k - 1/2) at the stated precision.

    Raises:
        ValueError: If precision is below MIN_PRECISION_BITS.
    """
    if precision < MIN_PRECISION_BITS:
        raise ValueError(f"precision must be at least {MIN_PRECISION_BITS} bits, got {precision}.")
    ctx = working_context(precision)
    return AdjustableReal(value=phi_in(ctx, params, t), precision=precision)


def truncated_expansion_eval(
    params: MultiquadricParams,
    x: Real,
    y: Real,
    J: int,
    precision: int,
) -> AdjustableReal:
    """Evaluate y^(2k - 1) sum_{j=0}^{J} A_{k,j}(x) / y^j.

    Requiring y >= 4 (|x| + c) keeps the binomial-series argument -2x/y + (x^2 + c^2)/y^2 within [-1/2, 9/16].

    Raises:
        ConvergenceThresholdError: If y < 4 (|x| + c).
        ValueError: If J is negative or precision is below MIN_PRECISION_BITS.
    """
    if J < 0:
        raise ValueError(f"J must be nonnegative, got {J}.")
    if precision < MIN_PRECISION_BITS:
        raise ValueError(f"precision must be at least {MIN_PRECISION_BITS} bits, got {precision}.")
    x_exact = to_fraction(x)
    y_exact = to_fraction(y)
    threshold = params.threshold(x_exact)
    if y_exact < threshold:
        raise ConvergenceThresholdError(f"y = {y_exact} is below the convergence threshold {threshold} at x = {x}.")
    ctx = working_context(precision)
    y_value = to_mpf(ctx, y)
    inverse = 1 / y_value
    total = ctx.zero
    for j in range(J, -1, -1):
        total = total * inverse + to_mpf(ctx, expansion_polynomial(params, j)(x_exact))
    return AdjustableReal(value=total * y_value ** (2 * params.k - 1), precision=precision)
