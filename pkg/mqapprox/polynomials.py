"""Exact univariate polynomials with rational coefficients."""

from fractions import Fraction
from typing import Any, Iterable, Sequence

from attrs import field, frozen
from mpmath.ctx_mp import MPContext
from typing_extensions import Self

from mqapprox.scalars import Real, to_fraction, to_mpf

__all__ = ["RationalPolynomial"]


def _trimmed(coefficients: Iterable[Any]) -> tuple[Fraction, ...]:
    """Convert to fractions and drop trailing zero coefficients."""
    values = [to_fraction(c) for c in coefficients]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@frozen
class RationalPolynomial:
    """A polynomial in one variable with exact rational coefficients.

    Example:
        .. code-block:: python

            p = RationalPolynomial.from_coefficients([1, 0, Fraction(1, 2)])  # 1 + x^2 / 2
            assert p.degree == 2
            assert p(Fraction(2)) == 3
    """

    coefficients: tuple[Fraction, ...] = field(converter=_trimmed)
    """Coefficients indexed by monomial degree; the last one is nonzero unless the polynomial is zero."""

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[Any]) -> Self:
        """Build from coefficients in increasing degree order."""
        return cls(coefficients)

    @classmethod
    def zero(cls) -> Self:
        """The zero polynomial."""
        return cls(())

    @classmethod
    def constant(cls, value: Real) -> Self:
        """A constant polynomial."""
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coefficient: Real = 1) -> Self:
        """The polynomial ``coefficient * x^degree``."""
        if degree < 0:
            raise ValueError(f"Monomial degree must be nonnegative, got {degree}.")
        return cls([0] * degree + [coefficient])

    @classmethod
    def interpolate(cls, xs: Sequence[Real], ys: Sequence[Real]) -> Self:
        """Return the unique polynomial of degree < len(xs) through the points (xs[i], ys[i]), exactly.

        Raises:
            ValueError: If the inputs differ in length or the nodes repeat.
        """
        if len(xs) != len(ys):
            raise ValueError("xs and ys must have the same length.")
        nodes = [to_fraction(x) for x in xs]
        if len(set(nodes)) != len(nodes):
            raise ValueError("Interpolation nodes must be distinct.")
        result = cls.zero()
        for i, (xi, yi) in enumerate(zip(nodes, ys)):
            basis = cls.constant(1)
            for j, xj in enumerate(nodes):
                if j != i:
                    basis = basis * cls((-xj, 1)) * (1 / (xi - xj))
            result = result + basis * to_fraction(yi)
        return result

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        """The leading coefficient (zero for the zero polynomial)."""
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        """Whether every coefficient is zero."""
        return not self.coefficients

    def __getitem__(self, degree: int) -> Fraction:
        """The coefficient of x^degree (zero beyond the degree)."""
        if degree < 0:
            raise IndexError(f"Negative monomial degree {degree}.")
        if degree > self.degree:
            return Fraction(0)
        return self.coefficients[degree]

    def __call__(self, x: Fraction) -> Fraction:
        """Evaluate exactly at a rational point, by Horner's rule."""
        result = Fraction(0)
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    def evaluate_in(self, ctx: MPContext, x: Any) -> Any:
        """Evaluate at an mpf point using the arithmetic of ``ctx``."""
        x = to_mpf(ctx, x)
        result = ctx.zero
        for c in reversed(self.coefficients):
            result = result * x + to_mpf(ctx, c)
        return result

    def __add__(self, other: "RationalPolynomial | Real") -> "RationalPolynomial":
        """Add a polynomial or a scalar."""
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial.constant(other)
        size = max(len(self.coefficients), len(other.coefficients))
        return RationalPolynomial([self[i] + other[i] for i in range(size)])

    __radd__ = __add__

    def __neg__(self) -> "RationalPolynomial":
        """Negate every coefficient."""
        return RationalPolynomial([-c for c in self.coefficients])

    def __sub__(self, other: "RationalPolynomial | Real") -> "RationalPolynomial":
        """Subtract a polynomial or a scalar."""
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial.constant(other)
        return self + (-other)

    def __mul__(self, other: "RationalPolynomial | Real") -> "RationalPolynomial":
        """Multiply by a polynomial or a scalar."""
        if not isinstance(other, RationalPolynomial):
            scalar = to_fraction(other)
            return RationalPolynomial([c * scalar for c in self.coefficients])
        if self.is_zero() or other.is_zero():
            return RationalPolynomial.zero()
        product = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                product[i + j] += a * b
        return RationalPolynomial(product)

    __rmul__ = __mul__

    def to_string(self, variable: str = "x") -> str:
        """Render with the highest degree first, e.g. ``1/2*x^3 - x + 2``."""
        if self.is_zero():
            return "0"
        pieces: list[str] = []
        for degree in range(self.degree, -1, -1):
            c = self.coefficients[degree]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if degree == 0:
                body = str(magnitude)
            else:
                power = variable if degree == 1 else f"{variable}^{degree}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            if not pieces:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        """Render in the variable x."""
        return self.to_string()
