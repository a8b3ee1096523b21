"""Functions to approximate."""

from typing import Any

from attrs import frozen
from mpmath.ctx_mp import MPContext
from typing_extensions import Self

from mqapprox.constants import TARGET_CATALOG, RealEvaluator
from mqapprox.expressions import parse_expression
from mqapprox.polynomials import RationalPolynomial
from mqapprox.scalars import Real, to_mpf

__all__ = ["TargetFunction"]


@frozen
class TargetFunction:
    """A real function together with a human-readable description.

    The evaluator receives an mpmath context and a value of that context, so the target is computed at whatever
    precision the caller works at.
    """

    evaluator: RealEvaluator
    """Maps (ctx, x) to f(x) using the arithmetic of ctx."""

    description: str
    """An expression, catalog name or polynomial rendering."""

    @classmethod
    def from_expression(cls, text: str) -> Self:
        """Parse an expression in x.

        Raises:
            ExpressionSyntaxError: If the text does not parse.
        """
        ast = parse_expression(text)
        return cls(evaluator=ast.evaluate, description=text)

    @classmethod
    def from_catalog(cls, name: str) -> Self:
        """One of the named targets in TARGET_CATALOG.

        Raises:
            KeyError: If the name is not in the catalog.
        """
        if name not in TARGET_CATALOG:
            raise KeyError(f"Unknown target {name!r}; choose from {sorted(TARGET_CATALOG)}.")
        return cls(evaluator=parse_expression(TARGET_CATALOG[name]).evaluate, description=name)

    @classmethod
    def from_text(cls, text: str) -> Self:
        """A catalog name if ``text`` is one, otherwise an expression."""
        if text in TARGET_CATALOG:
            return cls.from_catalog(text)
        return cls.from_expression(text)

    @classmethod
    def from_polynomial(cls, p: RationalPolynomial) -> Self:
        """Evaluate p by Horner's rule in the caller's context."""

        def evaluator(ctx: MPContext, x: Any) -> Any:
            return p.evaluate_in(ctx, x)

        return cls(evaluator=evaluator, description=p.to_string())

    def __call__(self, ctx: MPContext, x: Real) -> Any:
        """f(x) as a value of ctx."""
        return self.evaluator(ctx, to_mpf(ctx, x))
