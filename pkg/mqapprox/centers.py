"""Scattered sequences and the doubling center sets selected from them.

A sequence is delta-separated when any two distinct points differ by at least delta, and scattered when it is
delta-separated and unbounded in both directions. Only the positive tail is enumerated here: the approximation
construction picks its centers far to the right of the approximation interval.
"""

import bisect
import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Sequence, Union

import numpy as np
from attrs import field, frozen
from attrs.validators import ge, instance_of
from typing_extensions import Self

from mqapprox.constants import JITTER_DENOMINATOR
from mqapprox.scalars import Real, to_fraction

__all__ = [
    "CenterSet",
    "ExplicitSequence",
    "IntegerLattice",
    "JitteredLattice",
    "ScatteredSequence",
    "SequenceExhaustedError",
    "UnsortedPointsError",
    "load_explicit_sequence",
    "next_at_least",
    "select_centers",
    "validate_separation",
]

logger = logging.getLogger(__name__)


class SequenceExhaustedError(LookupError):
    """Raised when a finite sequence has no element at or beyond the requested point."""

    pass


class UnsortedPointsError(ValueError):
    """Raised when points are required in ascending order but are not."""

    pass


def _fractions(points: Sequence[Real]) -> tuple[Fraction, ...]:
    return tuple(to_fraction(p) for p in points)


def validate_separation(points: Sequence[Real], delta: Real) -> bool:
    """Check that every adjacent gap of a sorted point list is at least delta.

    Raises:
        UnsortedPointsError: If the points are not sorted ascending.
    """
    values = _fractions(points)
    delta = to_fraction(delta)
    if any(b < a for a, b in zip(values, values[1:])):
        raise UnsortedPointsError("Points must be sorted in ascending order.")
    return all(b - a >= delta for a, b in zip(values, values[1:]))


@frozen
class IntegerLattice:
    """The integers, a 1-separated scattered sequence."""

    @property
    def declared_delta(self) -> Fraction:
        """Separation of the lattice."""
        return Fraction(1)

    def next_at_least(self, t: Real) -> Fraction:
        """The smallest integer >= t."""
        return Fraction(math.ceil(to_fraction(t)))

    def points(self, lo: Real, hi: Real) -> list[Fraction]:
        """All lattice points in [lo, hi]."""
        return [Fraction(n) for n in range(math.ceil(to_fraction(lo)), math.floor(to_fraction(hi)) + 1)]


def _validate_radius(instance: "JitteredLattice", _: object, radius: Fraction) -> None:
    if not 0 <= radius < Fraction(1, 2):
        raise ValueError(f"Jitter radius must lie in [0, 1/2), got {radius}.")


@frozen
class JitteredLattice:
    """Integers n shifted by deterministic offsets r_n with |r_n| <= radius < 1/2.

    Offsets are multiples of 1 / JITTER_DENOMINATOR drawn from a numpy generator seeded by (seed, n), so points
    stay exact rationals and the sequence depends only on its seed. Adjacent points are at least 1 - 2 * radius
    apart.
    """

    radius: Fraction = field(converter=to_fraction, validator=_validate_radius)
    """Largest allowed offset magnitude."""

    seed: int = field(default=0, validator=[instance_of(int), ge(0)])
    """Seed for the offset generator."""

    @property
    def declared_delta(self) -> Fraction:
        """Guaranteed separation, 1 - 2 * radius."""
        return 1 - 2 * self.radius

    def point(self, n: int) -> Fraction:
        """The point attached to lattice index n."""
        steps = math.floor(self.radius * JITTER_DENOMINATOR)
        if steps == 0:
            return Fraction(n)
        # SeedSequence entropy must be nonnegative
        rng = np.random.default_rng([self.seed, 2 * abs(n) + (n < 0)])
        offset = int(rng.integers(-steps, steps, endpoint=True))
        return n + Fraction(offset, JITTER_DENOMINATOR)

    def next_at_least(self, t: Real) -> Fraction:
        """The smallest point >= t."""
        t = to_fraction(t)
        n = math.floor(t - self.radius)
        while self.point(n) < t:
            n += 1
        return self.point(n)

    def points(self, lo: Real, hi: Real) -> list[Fraction]:
        """All points in [lo, hi], ascending."""
        lo, hi = to_fraction(lo), to_fraction(hi)
        found = []
        for n in range(math.floor(lo - self.radius), math.ceil(hi + self.radius) + 1):
            p = self.point(n)
            if lo <= p <= hi:
                found.append(p)
        return found


def _sorted_points(instance: "ExplicitSequence", _: object, points: tuple[Fraction, ...]) -> None:
    if not points:
        raise ValueError("An explicit sequence needs at least one point.")
    if any(b <= a for a, b in zip(points, points[1:])):
        raise UnsortedPointsError("Explicit sequence points must be strictly increasing.")


@frozen
class ExplicitSequence:
    """A finite, strictly increasing list of points."""

    values: tuple[Fraction, ...] = field(converter=_fractions, validator=_sorted_points)
    """The points, ascending."""

    delta: Fraction | None = field(default=None, converter=lambda d: None if d is None else to_fraction(d))
    """Declared separation; defaults to the smallest gap."""

    def __attrs_post_init__(self) -> None:
        """Check the declared separation against the points.

        Raises:
            ValueError: If the points are closer than the declared separation.
        """
        if self.delta is not None and not validate_separation(self.values, self.delta):
            raise ValueError(f"The points are not {self.delta}-separated.")

    @property
    def declared_delta(self) -> Fraction:
        """The declared separation, or the smallest gap (1 for a single point)."""
        if self.delta is not None:
            return self.delta
        gaps = [b - a for a, b in zip(self.values, self.values[1:])]
        return min(gaps) if gaps else Fraction(1)

    def next_at_least(self, t: Real) -> Fraction:
        """The smallest listed point >= t.

        Raises:
            SequenceExhaustedError: If every point is below t.
        """
        index = bisect.bisect_left(self.values, to_fraction(t))
        if index == len(self.values):
            raise SequenceExhaustedError(f"No point of the explicit sequence is >= {t}.")
        return self.values[index]

    def points(self, lo: Real, hi: Real) -> list[Fraction]:
        """All listed points in [lo, hi]."""
        lo, hi = to_fraction(lo), to_fraction(hi)
        return [p for p in self.values if lo <= p <= hi]


ScatteredSequence = Union[IntegerLattice, JitteredLattice, ExplicitSequence]
"""Any of the supported sequence sources."""


def load_explicit_sequence(path: Path | str, delta: Real | None = None) -> ExplicitSequence:
    """Load a sequence from a text file with one number per line.

    Lines may hold decimals (``2.5``) or rationals (``5/2``); blank lines and lines starting with ``#`` are skipped.
    Points are sorted on load.

    Raises:
        ValueError: If a line is not a number, or points repeat.
    """
    values = []
    for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            values.append(Fraction(text))
        except ValueError as err:
            raise ValueError(f"{path}:{number}: not a number: {text!r}") from err
    return ExplicitSequence(values=sorted(values), delta=delta)


def next_at_least(seq: ScatteredSequence, t: Real) -> Fraction:
    """Return the smallest element of the sequence that is >= t.

    Raises:
        SequenceExhaustedError: If a finite sequence has no such element.
    """
    return seq.next_at_least(t)


def _doubling(instance: "CenterSet", _: object, centers: tuple[Fraction, ...]) -> None:
    if not centers:
        raise ValueError("A center set needs at least one center.")
    if centers[0] <= 0:
        raise ValueError(f"Centers must be positive, got y_1 = {centers[0]}.")
    for j in range(1, len(centers)):
        if centers[j] < 2 * centers[j - 1]:
            raise ValueError(f"Centers must at least double: y_{j + 1} = {centers[j]} < 2 * {centers[j - 1]}.")


@frozen
class CenterSet:
    """Positive centers y_1 < ... < y_M with y_j >= 2 y_{j-1}."""

    centers: tuple[Fraction, ...] = field(converter=_fractions, validator=_doubling)
    """The centers, ascending."""

    def __len__(self) -> int:
        """Number of centers."""
        return len(self.centers)

    def __iter__(self) -> Iterator[Fraction]:
        """Iterate over the centers in ascending order."""
        return iter(self.centers)

    def __getitem__(self, index: int) -> Fraction:
        """The center at a zero-based position."""
        return self.centers[index]

    @property
    def smallest(self) -> Fraction:
        """y_1."""
        return self.centers[0]

    @property
    def largest(self) -> Fraction:
        """y_M."""
        return self.centers[-1]

    def prefix(self, size: int) -> Self:
        """The first ``size`` centers, which again form a doubling set."""
        if not 1 <= size <= len(self.centers):
            raise ValueError(f"Prefix size must lie in 1..{len(self.centers)}, got {size}.")
        return type(self)(self.centers[:size])


def select_centers(seq: ScatteredSequence, M: int, y_min: Real) -> CenterSet:
    """Greedily pick M doubling centers from a sequence.

    y_1 is the first element >= y_min and each y_j is the first element >= 2 y_{j-1}, which keeps y_M as small as
    the sequence allows.

    Raises:
        ValueError: If M < 1 or y_min <= 0.
        SequenceExhaustedError: If a finite sequence runs out.
    """
    if M < 1:
        raise ValueError(f"M must be a positive integer, got {M}.")
    y_min = to_fraction(y_min)
    if y_min <= 0:
        raise ValueError(f"y_min must be positive, got {y_min}.")
    centers = [next_at_least(seq, y_min)]
    while len(centers) < M:
        centers.append(next_at_least(seq, 2 * centers[-1]))
    logger.debug(f"Selected {M} centers from {centers[0]} to {centers[-1]}.")
    return CenterSet(centers)

