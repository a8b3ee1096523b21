"""Weights for recovering one expansion polynomial from translates.

Given centers y_1, ..., y_M with M = 2k + N + 1, the weights b_j solve

    sum_j b_j y_j^l = delta_{l, -N-1}    for l = 2k - 1, 2k - 2, ..., -N - 1.

Substituting c_j = b_j y_j^(-N-1) turns this into the standard Vandermonde system sum_j c_j y_j^m = delta_{m,0},
m = 0..M-1, whose solution is the Lagrange cardinal value c_j = prod_{l != j} (1 - y_j / y_l)^(-1).

Erratum note: a printed version of the closed form carries an extra factor (-1)^(j+1). Over doubling centers that
factor turns b_j into |b_j|, since exactly j - 1 factors of the product are negative. The exact solve is the
reference; ``sign_corrected_magnitudes`` keeps the printed form available for comparison.
"""

import logging
from fractions import Fraction
from typing import Sequence

from attrs import field, frozen
from attrs.validators import ge, instance_of

from mqapprox.centers import CenterSet
from mqapprox.scalars import Real, to_fraction

__all__ = [
    "SingularSystemError",
    "WeightVector",
    "boundedness_constant",
    "closed_form_weights",
    "normalized_weights",
    "sign_corrected_magnitudes",
    "solve_weights_exact",
]

logger = logging.getLogger(__name__)


class SingularSystemError(ValueError):
    """Raised when the weight system has no unique solution, e.g. because centers repeat."""

    pass


def _as_centers(centers: CenterSet | Sequence[Real]) -> tuple[Fraction, ...]:
    if isinstance(centers, CenterSet):
        return centers.centers
    return tuple(to_fraction(y) for y in centers)


def _check_system(centers: tuple[Fraction, ...], k: int, N: int) -> None:
    if k < 1 or N < 0:
        raise ValueError(f"Expected k >= 1 and N >= 0, got k={k}, N={N}.")
    if len(centers) != 2 * k + N + 1:
        raise ValueError(f"The system for k={k}, N={N} needs {2 * k + N + 1} centers, got {len(centers)}.")
    if any(y == 0 for y in centers):
        raise SingularSystemError("Centers must be nonzero.")
    if len(set(centers)) != len(centers):
        raise SingularSystemError("Centers must be distinct.")


@frozen(kw_only=True)
class WeightVector:
    """Solution b_1, ..., b_M of the weight system together with its context."""

    weights: tuple[Fraction, ...]
    """The weights b_j, in the order of ``centers``."""

    order_k: int = field(validator=[instance_of(int), ge(1)])
    """Multiquadric order k."""

    degree_N: int = field(validator=[instance_of(int), ge(0)])
    """Degree N of the recovered polynomial A_{k, 2k+N}."""

    centers: tuple[Fraction, ...]
    """The centers the system was solved on."""

    def __attrs_post_init__(self) -> None:
        """Check sizes."""
        if len(self.weights) != len(self.centers) or len(self.centers) != 2 * self.order_k + self.degree_N + 1:
            raise ValueError("A weight vector needs exactly 2k + N + 1 weights and centers.")

    @property
    def powers(self) -> range:
        """Exponents l of the system rows, from 2k - 1 down to -N - 1."""
        return range(2 * self.order_k - 1, -self.degree_N - 2, -1)

    def row_sums(self) -> dict[int, Fraction]:
        """sum_j b_j y_j^l for every system row l; exactly 1 at l = -N - 1 and 0 elsewhere."""
        return {l: sum((b * y**l for b, y in zip(self.weights, self.centers)), Fraction(0)) for l in self.powers}

    def satisfies_system(self) -> bool:
        """Whether every row of the system holds exactly."""
        target = -self.degree_N - 1
        return all(value == (1 if l == target else 0) for l, value in self.row_sums().items())


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination with exact arithmetic; pivots are the first nonzero entry in each column.

    Raises:
        SingularSystemError: If the matrix is singular.
    """
    size = len(matrix)
    rows = [row[:] + [value] for row, value in zip(matrix, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            raise SingularSystemError(f"The system is singular (no pivot in column {col}).")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        for r in range(col + 1, size):
            factor = rows[r][col] / lead
            if factor == 0:
                continue
            for c in range(col, size + 1):
                rows[r][c] -= factor * rows[col][c]
    solution = [Fraction(0)] * size
    for r in range(size - 1, -1, -1):
        s = rows[r][size] - sum((rows[r][c] * solution[c] for c in range(r + 1, size)), Fraction(0))
        solution[r] = s / rows[r][r]
    return solution


def solve_weights_exact(centers: CenterSet | Sequence[Real], k: int, N: int) -> WeightVector:
    """Solve the weight system by exact elimination.

    Args:
        centers: 2k + N + 1 distinct nonzero centers; a CenterSet or any sequence of exact values.
        k: Multiquadric order.
        N: Degree of the polynomial to recover.

    Raises:
        ValueError: If the number of centers is wrong.
        SingularSystemError: If centers repeat or vanish.
    """
    ys = _as_centers(centers)
    _check_system(ys, k, N)
    powers = range(2 * k - 1, -N - 2, -1)
    matrix = [[y**l for y in ys] for l in powers]
    rhs = [Fraction(1 if l == -N - 1 else 0) for l in powers]
    weights = _solve_exact(matrix, rhs)
    logger.debug(f"Solved the weight system for k={k}, N={N} on {len(ys)} centers from {ys[0]} to {ys[-1]}.")
    return WeightVector(weights=tuple(weights), order_k=k, degree_N=N, centers=ys)


def _cardinal_products(ys: tuple[Fraction, ...]) -> list[Fraction]:
    """prod_{l != j} (1 - y_j / y_l)^(-1) for each j."""
    products = []
    for j, yj in enumerate(ys):
        product = Fraction(1)
        for l, yl in enumerate(ys):
            if l != j:
                product *= 1 - yj / yl
        products.append(1 / product)
    return products


def closed_form_weights(centers: CenterSet | Sequence[Real], k: int, N: int) -> WeightVector:
    """Evaluate b_j = y_j^(N+1) prod_{l != j} (1 - y_j / y_l)^(-1) exactly.

    Raises:
        ValueError: If the number of centers is wrong.
        SingularSystemError: If centers repeat or vanish.
    """
    ys = _as_centers(centers)
    _check_system(ys, k, N)
    weights = tuple(y ** (N + 1) * product for y, product in zip(ys, _cardinal_products(ys)))
    return WeightVector(weights=weights, order_k=k, degree_N=N, centers=ys)


def sign_corrected_magnitudes(centers: CenterSet | Sequence[Real], k: int, N: int) -> tuple[Fraction, ...]:
    """The closed form with an extra (-1)^(j+1) prefactor, j counted from 1.

    Over doubling centers this equals |b_j| for every j.
    """
    weights = closed_form_weights(centers, k, N).weights
    return tuple((-1) ** j * b for j, b in enumerate(weights))


def normalized_weights(wv: WeightVector) -> list[Fraction]:
    """Return c_j = b_j y_j^(-(N+1)).

    Over doubling centers, max_j |c_j| stays below prod_{m >= 1} (1 - 2^(-m))^(-1) < 3.4628.
    """
    return [b / y ** (wv.degree_N + 1) for b, y in zip(wv.weights, wv.centers)]


def boundedness_constant(terms: int = 40) -> Fraction:
    """Partial product prod_{m=1}^{terms} (1 - 2^(-m))^(-1), exactly.

    The infinite product is about 3.4627466; the partial products increase to it, and 40 terms are within 1e-11.
    """
    product = Fraction(1)
    for m in range(1, terms + 1):
        product /= 1 - Fraction(1, 2**m)
    return product
