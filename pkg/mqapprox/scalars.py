"""Exact rational and adjustable-precision scalar arithmetic.

Exact values are ``fractions.Fraction`` throughout. Adjustable-precision values are mpmath numbers bound to a
per-precision ``MPContext``, so no operation here touches the global ``mpmath.mp`` state.
"""

import functools
import math
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Union

from attrs import field, frozen
from attrs.validators import ge, instance_of
from mpmath.ctx_mp import MPContext
from mpmath.libmp import from_rational, round_nearest
from typing_extensions import Self

from mqapprox.constants import GUARD_BITS

if TYPE_CHECKING:
    from mqapprox.polynomials import RationalPolynomial

__all__ = [
    "AdjustableReal",
    "ExactRational",
    "LemmaHypothesisError",
    "alternating_binomial_sum",
    "alternating_binomial_sum_by_differentiation",
    "double_factorial",
    "falling_factorial_coefficients",
    "generalized_binomial",
    "half_integer_binomial",
    "monic_odd_ratio",
    "required_precision_bits",
    "to_fraction",
    "to_mpf",
    "working_context",
]

ExactRational = Fraction
"""Exact rationals are stored in lowest terms with a positive denominator by ``Fraction`` itself."""

Real = Union[Fraction, int, float, str, Any]
"""Anything ``to_mpf`` accepts: exact rationals, ints, floats, decimal strings, or mpmath numbers."""


class LemmaHypothesisError(ValueError):
    """Raised when an identity is requested outside the hypotheses it holds under."""

    pass


@functools.lru_cache(maxsize=None)
def working_context(bits: int) -> MPContext:
    """Return an mpmath context with fixed working precision.

    Contexts are created once per precision and never have their precision changed afterwards, so they can be
    shared between threads.
    """
    if bits < 2:
        raise ValueError(f"Precision must be at least 2 bits, got {bits}.")
    ctx = MPContext()
    ctx.prec = bits
    return ctx


def to_mpf(ctx: MPContext, value: Real) -> Any:
    """Convert a real value to an mpf of ``ctx``, rounding once to nearest.

    Fractions are rounded directly from numerator and denominator rather than through an intermediate float.
    """
    if isinstance(value, Fraction):
        return ctx.make_mpf(from_rational(value.numerator, value.denominator, ctx.prec, round_nearest))
    if isinstance(value, AdjustableReal):
        return ctx.mpf(value.value)
    return ctx.mpf(value)


def to_fraction(value: Real) -> Fraction:
    """Convert a finite real value to the exact rational it represents.

    Raises:
        ValueError: If the value is an infinity or NaN.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"Cannot represent {value} exactly.")
        return Fraction(value)
    if isinstance(value, AdjustableReal):
        value = value.value
    sign, man, exp, _ = value._mpf_
    if not man and exp:
        raise ValueError(f"Cannot represent {value} exactly.")
    magnitude = Fraction(man) * Fraction(2) ** exp
    return -magnitude if sign else magnitude


@frozen
class AdjustableReal:
    """A binary floating-point value together with the precision it was rounded to.

    Arithmetic between two values runs at the larger of the two precisions. Plain numbers are taken at the
    precision of the AdjustableReal they are combined with.
    """

    value: Any
    """The mpf value, rounded to ``precision`` bits."""

    precision: int = field(validator=[instance_of(int), ge(2)])
    """Working precision in bits."""

    @classmethod
    def of(cls, value: Real, precision: int) -> Self:
        """Round a real value to the given precision."""
        return cls(value=to_mpf(working_context(precision), value), precision=precision)

    @property
    def context(self) -> MPContext:
        """The mpmath context of this value's precision."""
        return working_context(self.precision)

    def _operands(self, other: Any) -> tuple[MPContext, Any, Any, int]:
        if isinstance(other, AdjustableReal):
            bits = max(self.precision, other.precision)
        else:
            bits = self.precision
        ctx = working_context(bits)
        return ctx, ctx.mpf(self.value), to_mpf(ctx, other), bits

    def __add__(self, other: Any) -> "AdjustableReal":
        """Add at the larger precision."""
        _, a, b, bits = self._operands(other)
        return AdjustableReal(value=a + b, precision=bits)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "AdjustableReal":
        """Subtract at the larger precision."""
        _, a, b, bits = self._operands(other)
        return AdjustableReal(value=a - b, precision=bits)

    def __rsub__(self, other: Any) -> "AdjustableReal":
        """Subtract from a plain number."""
        _, a, b, bits = self._operands(other)
        return AdjustableReal(value=b - a, precision=bits)

    def __mul__(self, other: Any) -> "AdjustableReal":
        """Multiply at the larger precision."""
        _, a, b, bits = self._operands(other)
        return AdjustableReal(value=a * b, precision=bits)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "AdjustableReal":
        """Divide at the larger precision."""
        _, a, b, bits = self._operands(other)
        return AdjustableReal(value=a / b, precision=bits)

    def __rtruediv__(self, other: Any) -> "AdjustableReal":
        """Divide a plain number by this value."""
        _, a, b, bits = self._operands(other)
        return AdjustableReal(value=b / a, precision=bits)

    def __neg__(self) -> "AdjustableReal":
        """Negate (exact)."""
        return AdjustableReal(value=-self.value, precision=self.precision)

    def __abs__(self) -> "AdjustableReal":
        """Absolute value (exact)."""
        return AdjustableReal(value=abs(self.value), precision=self.precision)

    def __float__(self) -> float:
        """Round to a Python float."""
        return float(self.value)

    def sqrt(self) -> "AdjustableReal":
        """Square root at this value's precision."""
        return AdjustableReal(value=self.context.sqrt(self.value), precision=self.precision)


def generalized_binomial(a: Fraction | int, n: int) -> Fraction:
    """Return C(a, n) = a (a - 1) ... (a - n + 1) / n! for any rational a.

    Raises:
        ValueError: If n is negative.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}.")
    a = Fraction(a)
    product = Fraction(1)
    for i in range(n):
        product *= a - i
    return product / math.factorial(n)


@functools.lru_cache(maxsize=4096)
def half_integer_binomial(k: int, n: int) -> Fraction:
    """Return the binomial coefficient C(k - 1/2, n), exactly.

    Args:
        k: A positive integer; the upper argument is k - 1/2.
        n: A nonnegative integer.

    Raises:
        ValueError: If k < 1 or n < 0.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}.")
    return generalized_binomial(Fraction(2 * k - 1, 2), n)


def double_factorial(m: int) -> int:
    """Return m!! = m (m - 2) ... 3 1 for odd m >= -1, with (-1)!! = 1.

    Raises:
        ValueError: If m is even or m < -1.
    """
    if m < -1 or m % 2 == 0:
        raise ValueError(f"Double factorial is defined here for odd m >= -1, got {m}.")
    result = 1
    for factor in range(m, 1, -2):
        result *= factor
    return result


def alternating_binomial_sum(N: int, p: "RationalPolynomial") -> Fraction:
    """Return sum_{j=0}^{N} (-1)^j C(N, j) p(j).

    For deg(p) < N the sum vanishes, and for deg(p) = N it equals (-1)^N N! times the leading coefficient.

    Raises:
        ValueError: If N is not positive.
        LemmaHypothesisError: If deg(p) > N.
    """
    if N < 1:
        raise ValueError(f"N must be a positive integer, got {N}.")
    if p.degree > N:
        raise LemmaHypothesisError(f"The polynomial has degree {p.degree}, which exceeds N = {N}.")
    return sum(((-1) ** j * math.comb(N, j) * p(Fraction(j)) for j in range(N + 1)), Fraction(0))


@functools.lru_cache(maxsize=256)
def _stirling2(d: int, i: int) -> int:
    """Stirling number of the second kind, S(d, i)."""
    if d == i:
        return 1
    if i == 0 or i > d:
        return 0
    return i * _stirling2(d - 1, i) + _stirling2(d - 1, i - 1)


def falling_factorial_coefficients(p: "RationalPolynomial") -> list[Fraction]:
    """Rewrite p in the basis 1, j, j (j - 1), j (j - 1) (j - 2), ...

    Returns:
        Coefficients b_0, ..., b_deg with p(j) = sum_i b_i j (j - 1) ... (j - i + 1).
    """
    coefficients = p.coefficients
    return [
        sum((c * _stirling2(d, i) for d, c in enumerate(coefficients)), Fraction(0))
        for i in range(len(coefficients))
    ]


def alternating_binomial_sum_by_differentiation(N: int, p: "RationalPolynomial") -> Fraction:
    """Compute the alternating binomial sum by differentiating (1 - x)^N.

    Differentiating (1 - x)^N = sum_j (-1)^j C(N, j) x^j exactly i times and setting x = 1 gives
    sum_j (-1)^j C(N, j) j (j - 1) ... (j - i + 1), which is (-1)^N N! when i = N and zero when i < N.

    Raises:
        ValueError: If N is not positive.
        LemmaHypothesisError: If deg(p) > N.
    """
    if N < 1:
        raise ValueError(f"N must be a positive integer, got {N}.")
    if p.degree > N:
        raise LemmaHypothesisError(f"The polynomial has degree {p.degree}, which exceeds N = {N}.")
    basis = falling_factorial_coefficients(p)
    if len(basis) <= N:
        return Fraction(0)
    return basis[N] * (-1) ** N * math.factorial(N)


def monic_odd_ratio(n: int, m: int) -> Fraction:
    """Return (2(n + m) + 1)!! / (2^m (2n + 1)!!).

    This is (2n + 2m + 1)(2n + 2m - 1) ... (2n + 3) / 2^m, a monic polynomial of degree m in n.
    """
    if n < 0 or m < 0:
        raise ValueError(f"n and m must be nonnegative, got n={n}, m={m}.")
    return Fraction(double_factorial(2 * (n + m) + 1), 2**m * double_factorial(2 * n + 1))


def required_precision_bits(k: int, N: int, y_max: Real) -> int:
    """Plan the working precision for evaluating a translate sum over centers up to y_max.

    Terms of the sum reach magnitude about y_max^(2k + N) while the sum itself is O(1), so that many bits cancel;
    GUARD_BITS correct bits remain on top of them.

    Raises:
        ValueError: If y_max < 1.
    """
    y_max = to_fraction(y_max)
    if y_max < 1:
        raise ValueError(f"y_max must be at least 1, got {y_max}.")
    log2_y = math.log2(y_max.numerator) - math.log2(y_max.denominator)
    return math.ceil((2 * k + N + 1) * log2_y) + GUARD_BITS
