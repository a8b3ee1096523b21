"""Constants and call protocols shared across the package."""

from typing import TYPE_CHECKING, Any, Protocol

if TYPE_CHECKING:
    from mqapprox.approximation.approximant import Approximant

GUARD_BITS = 64
"""Correct bits retained after the cancellation in translate sums."""

MIN_PRECISION_BITS = 16
"""Smallest working precision accepted by multiquadric evaluation."""

PROXY_PRECISION_BITS = 128
"""Working precision for Chebyshev proxy construction and proxy defect measurement."""

DEFAULT_GRID_POINTS = 2049
"""Equispaced grid size for sup-norm and L^p error measurement."""

DOUBLING_CAP = 40
"""Maximum number of times approximate_function doubles the smallest center."""

DEGREE_CAP = 64
"""Maximum Chebyshev proxy degree scanned by approximate_function."""

BOUNDEDNESS_BOUND = 3.4628
"""Upper bound on normalized weights over doubling centers, just above prod (1 - 2^-m)^-1."""

THRESHOLD_FACTOR = 4
"""Expansions of phi_k(x - y) are evaluated only when y >= THRESHOLD_FACTOR * (|x| + c)."""

JITTER_DENOMINATOR = 1024
"""Jittered lattice offsets are multiples of 1 / JITTER_DENOMINATOR, keeping centers exact."""

TARGET_CATALOG = {
    "exp": "exp(x)",
    "sin": "sin(x)",
    "cos": "cos(x)",
    "abs": "abs(x)",
    "sqrt": "sqrt(x)",
    "log": "log(x)",
    "runge": "1/(1+25*x^2)",
}
"""Named target functions, as expressions in the variable x."""


class ApproximantBuilder(Protocol):
    """Protocol for functions that construct an approximant."""

    __name__: str

    def __call__(self, *args: Any, **kwargs: Any) -> "Approximant":
        """Specify the function signature."""
        ...


class RealEvaluator(Protocol):
    """Protocol for real functions evaluated inside an mpmath context."""

    def __call__(self, ctx: Any, x: Any) -> Any:
        """Evaluate at the mpf ``x`` using the arithmetic of ``ctx``."""
        ...
