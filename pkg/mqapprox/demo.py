"""Approximate exp on [0, 1] by translates of Hardy's multiquadric centered on the integers.

Run demo as:
    python -m mqapprox.demo

Expected log (abridged):
    DEBUG:mqapprox.demo:recover_expansion_polynomial returned 3 terms, largest center 32, 79 bits.
    INFO:mqapprox.approximation.construction:Approximated exp to ... with ... translates, ...
"""

import logging

from mqapprox.approximation.approximant import Approximant, Interval, evaluate
from mqapprox.approximation.construction import approximate_function
from mqapprox.approximation.measurement import ErrorReport
from mqapprox.approximation.recovery import recover_expansion_polynomial
from mqapprox.approximation.targets import TargetFunction
from mqapprox.centers import IntegerLattice, select_centers
from mqapprox.expansion import MultiquadricParams

UNIT = Interval(0, 1)
HARDY = MultiquadricParams(k=1, c=1)


def _recovery() -> Approximant:
    centers = select_centers(IntegerLattice(), 3, 8)
    return recover_expansion_polynomial(HARDY, 0, centers, UNIT)


def _approximation(epsilon: float = 1e-3) -> tuple[Approximant, ErrorReport]:
    return approximate_function(TargetFunction.from_catalog("exp"), UNIT, epsilon, HARDY, IntegerLattice())


if __name__ == "__main__":
    logging.basicConfig(level=logging.DEBUG, force=True)
    print("Recovering A[1,2] = 1/2 from the centers 8, 16, 32:")
    recovered = _recovery()
    print(f"value at 0: {float(evaluate(recovered, 0)):.6f}")
    print("\nApproximating exp on [0, 1] to 1e-3:")
    appr, report = _approximation()
    print(f"{len(appr.terms)} translates, sup error {report.sup_error:.3e}, L^2 error {report.lp_errors[2]:.3e}")
