"""Finite combinations of multiquadric translates over an interval."""

import json
import math
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable

import attrs
from attrs import define, field, frozen
from attrs.validators import ge, instance_of
from mpmath.ctx_mp import MPContext
from typing_extensions import Self

from mqapprox.expansion import MultiquadricParams, phi_in
from mqapprox.scalars import AdjustableReal, Real, to_fraction, to_mpf, working_context

__all__ = [
    "Approximant",
    "Interval",
    "evaluate",
]


@frozen
class Interval:
    """A closed interval [a, b] with exact rational endpoints."""

    a: Fraction = field(converter=to_fraction)
    """Left endpoint."""

    b: Fraction = field(converter=to_fraction)
    """Right endpoint."""

    def __attrs_post_init__(self) -> None:
        """Validate the endpoints.

        Raises:
            ValueError: If a >= b.
        """
        if not self.a < self.b:
            raise ValueError(f"An interval needs a < b, got [{self.a}, {self.b}].")

    @classmethod
    def from_text(cls, text: str) -> Self:
        """Parse ``"a,b"`` where each endpoint is a decimal or a rational ``p/q``."""
        pieces = [piece.strip() for piece in text.split(",")]
        if len(pieces) != 2:
            raise ValueError(f"Expected an interval as 'a,b', got {text!r}.")
        return cls(Fraction(pieces[0]), Fraction(pieces[1]))

    @property
    def length(self) -> Fraction:
        """b - a."""
        return self.b - self.a

    @property
    def max_abs(self) -> Fraction:
        """max(|a|, |b|)."""
        return max(abs(self.a), abs(self.b))

    @property
    def midpoint(self) -> Fraction:
        """(a + b) / 2."""
        return (self.a + self.b) / 2

    def grid(self, points: int) -> list[Fraction]:
        """Equispaced points including both endpoints.

        Raises:
            ValueError: If fewer than two points are requested.
        """
        if points < 2:
            raise ValueError(f"A grid needs at least 2 points, got {points}.")
        step = self.length / (points - 1)
        return [self.a + i * step for i in range(points)]


def _terms(values: Iterable[tuple[Real, Real]]) -> tuple[tuple[Fraction, Fraction], ...]:
    return tuple((to_fraction(y), to_fraction(a)) for y, a in values)


@define(frozen=True, slots=False, kw_only=True)
class Approximant:
    """The function x -> sum_j a_j phi_k(x - y_j), intended for x in ``interval``.

    Centers and coefficients are exact rationals; evaluation rounds them once to ``precision`` bits and carries out
    the sum at that precision.
    """

    params: MultiquadricParams
    """The multiquadric being translated."""

    terms: tuple[tuple[Fraction, Fraction], ...] = field(converter=_terms)
    """Pairs (center y_j, coefficient a_j), centers strictly increasing."""

    interval: Interval
    """The interval the approximant targets."""

    precision: int = field(validator=[instance_of(int), ge(2)])
    """Working precision in bits for evaluation."""

    def __attrs_post_init__(self) -> None:
        """Validate the centers.

        Raises:
            ValueError: If centers are not strictly increasing or lie below the expansion threshold.
        """
        centers = self.centers
        if any(b <= a for a, b in zip(centers, centers[1:])):
            raise ValueError("Approximant centers must be strictly increasing.")
        threshold = self.params.threshold(self.interval.max_abs)
        if centers and centers[0] < threshold:
            raise ValueError(f"Smallest center {centers[0]} is below the threshold {threshold} for {self.interval}.")

    @property
    def centers(self) -> tuple[Fraction, ...]:
        """The centers y_j."""
        return tuple(y for y, _ in self.terms)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        """The coefficients a_j."""
        return tuple(a for _, a in self.terms)

    @property
    def largest_center(self) -> Fraction:
        """y_M, or zero for an empty approximant."""
        return self.terms[-1][0] if self.terms else Fraction(0)

    @property
    def context(self) -> MPContext:
        """The mpmath context of the working precision."""
        return working_context(self.precision)

    @cached_property
    def _rounded_terms(self) -> list[tuple[Any, Any]]:
        ctx = self.context
        return [(to_mpf(ctx, y), to_mpf(ctx, a)) for y, a in self.terms]

    def value_at(self, x: Real) -> Any:
        """Evaluate at x, returning an mpf of the working precision."""
        ctx = self.context
        x = to_mpf(ctx, x)
        total = ctx.zero
        for y, a in self._rounded_terms:
            total += a * phi_in(ctx, self.params, x - y)
        return total

    def with_precision(self, bits: int) -> "Approximant":
        """The same centers and coefficients, evaluated at another precision."""
        return attrs.evolve(self, precision=bits)

    def to_json(self) -> str:
        """Serialize as {k, c, precision_bits, interval: [a, b], terms: [[y, a_j], ...]}.

        Centers, c and the interval are exact rational strings; coefficients are decimal strings of the values
        rounded to the working precision, with enough digits to read back to the same binary value.
        """
        ctx = self.context
        digits = math.ceil(self.precision * math.log10(2)) + 2
        document = {
            "k": self.params.k,
            "c": str(self.params.c),
            "precision_bits": self.precision,
            "interval": [str(self.interval.a), str(self.interval.b)],
            "terms": [[str(y), ctx.nstr(a, digits)] for (y, _), (_, a) in zip(self.terms, self._rounded_terms)],
        }
        return json.dumps(document, indent=2)

    @classmethod
    def from_json(cls, text: str) -> Self:
        """Read an approximant written by ``to_json``."""
        document = json.loads(text)
        precision = int(document["precision_bits"])
        ctx = working_context(precision)
        a, b = document["interval"]
        return cls(
            params=MultiquadricParams(k=int(document["k"]), c=Fraction(document["c"])),
            terms=[(Fraction(y), to_fraction(ctx.mpf(coefficient))) for y, coefficient in document["terms"]],
            interval=Interval(Fraction(a), Fraction(b)),
            precision=precision,
        )


def evaluate(appr: Approximant, x: Real) -> AdjustableReal:
    """Evaluate sum_j a_j phi_k(x - y_j) at the approximant's stored precision.

    Points outside the interval are evaluated too; they are not checked.
    """
    return AdjustableReal(value=appr.value_at(x), precision=appr.precision)
