"""Parse and evaluate target-function expressions in the variable x.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' integer)?
    atom   := number | 'x' | name '(' expr ')' | '(' expr ')' | '-' atom

Numbers are decimals such as ``3``, ``0.25`` or ``.5`` and are held exactly. A rational constant is written as an
integer division, e.g. ``1/3``. Known functions are sin, cos, exp, abs, sqrt and log.
"""

import re
from fractions import Fraction
from typing import Any, Union

from attrs import field, frozen
from attrs.validators import ge, in_, instance_of
from mpmath.ctx_mp import MPContext

from mqapprox.scalars import to_mpf

__all__ = [
    "BinaryOp",
    "Call",
    "ExpressionAst",
    "ExpressionEvaluationError",
    "ExpressionSyntaxError",
    "FUNCTIONS",
    "Negate",
    "Number",
    "Power",
    "UnknownFunctionError",
    "Variable",
    "parse_expression",
]

FUNCTIONS = ("sin", "cos", "exp", "abs", "sqrt", "log")
OPERATORS = ("+", "-", "*", "/")


class ExpressionSyntaxError(ValueError):
    """Raised when an expression does not follow the grammar."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()) -> None:
        """Record where parsing failed (as a byte offset into the UTF-8 text) and what would have been accepted."""
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f"; expected {' or '.join(expected)}"
        super().__init__(detail)
        self.offset = offset
        self.expected = expected


class UnknownFunctionError(ExpressionSyntaxError):
    """Raised when an expression calls a function outside FUNCTIONS."""

    pass


class ExpressionEvaluationError(ValueError):
    """Raised when an expression is evaluated outside its domain, e.g. sqrt of a negative number."""

    pass


def _decimal_text(value: Fraction) -> str:
    """Exact decimal rendering of a fraction whose denominator divides a power of ten."""
    digits = 0
    scaled = value
    while scaled.denominator != 1:
        scaled *= 10
        digits += 1
        if digits > 400:
            raise ValueError(f"{value} has no finite decimal expansion.")
    whole = str(scaled.numerator).rjust(digits + 1, "0")
    if digits == 0:
        return whole
    return f"{whole[:-digits]}.{whole[-digits:]}"


def _nonnegative(instance: object, _: object, value: Fraction) -> None:
    if value < 0:
        raise ValueError(f"Number literals are nonnegative; negate them instead (got {value}).")


@frozen
class Number:
    """A nonnegative decimal literal, held exactly."""

    value: Fraction = field(converter=Fraction, validator=_nonnegative)

    def evaluate(self, ctx: MPContext, x: Any) -> Any:
        """The literal rounded to the working precision."""
        return to_mpf(ctx, self.value)

    def to_text(self) -> str:
        """Decimal text that parses back to this literal."""
        return _decimal_text(self.value)


@frozen
class Variable:
    """The variable x."""

    def evaluate(self, ctx: MPContext, x: Any) -> Any:
        """The evaluation point."""
        return x

    def to_text(self) -> str:
        """Always ``x``."""
        return "x"


@frozen
class Negate:
    """Unary minus."""

    operand: "ExpressionAst"

    def evaluate(self, ctx: MPContext, x: Any) -> Any:
        """Negated operand."""
        return -self.operand.evaluate(ctx, x)

    def to_text(self) -> str:
        """Render as ``-(operand)``."""
        return f"-({self.operand.to_text()})"


@frozen
class BinaryOp:
    """One of + - * /."""

    op: str = field(validator=in_(OPERATORS))
    left: "ExpressionAst"
    right: "ExpressionAst"

    def evaluate(self, ctx: MPContext, x: Any) -> Any:
        """Apply the operator.

        Raises:
            ExpressionEvaluationError: On division by zero.
        """
        a = self.left.evaluate(ctx, x)
        b = self.right.evaluate(ctx, x)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if b == 0:
            raise ExpressionEvaluationError(f"Division by zero in {self.to_text()} at x = {x}.")
        return a / b

    def to_text(self) -> str:
        """Render fully parenthesized."""
        return f"({self.left.to_text()} {self.op} {self.right.to_text()})"


@frozen
class Power:
    """A base raised to a nonnegative integer exponent."""

    base: "ExpressionAst"
    exponent: int = field(validator=[instance_of(int), ge(0)])

    def evaluate(self, ctx: MPContext, x: Any) -> Any:
        """Integer power of the base."""
        return self.base.evaluate(ctx, x) ** self.exponent

    def to_text(self) -> str:
        """Render as ``(base)^n``."""
        return f"({self.base.to_text()})^{self.exponent}"


@frozen
class Call:
    """A call to one of the known functions."""

    name: str = field(validator=in_(FUNCTIONS))
    argument: "ExpressionAst"

    def evaluate(self, ctx: MPContext, x: Any) -> Any:
        """Apply the function.

        Raises:
            ExpressionEvaluationError: For sqrt of a negative number or log of a nonpositive one.
        """
        value = self.argument.evaluate(ctx, x)
        if self.name == "abs":
            return abs(value)
        if self.name == "sqrt":
            if value < 0:
                raise ExpressionEvaluationError(f"sqrt of negative value {value} at x = {x}.")
            return ctx.sqrt(value)
        if self.name == "log":
            if value <= 0:
                raise ExpressionEvaluationError(f"log of nonpositive value {value} at x = {x}.")
            return ctx.log(value)
        return getattr(ctx, self.name)(value)

    def to_text(self) -> str:
        """Render as ``name(argument)``."""
        return f"{self.name}({self.argument.to_text()})"


ExpressionAst = Union[Number, Variable, Negate, BinaryOp, Power, Call]
"""Any node of a parsed expression."""

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")

_ATOM_START = ("number", "'x'", "function name", "'('", "'-'")


@frozen
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    position = 0
    while True:
        while position < len(text) and text[position].isspace():
            position += 1
        if position == len(text):
            break
        match = _TOKEN.match(text, position)
        if match is None:
            raise ExpressionSyntaxError(f"Unexpected character {text[position]!r}", _byte_offset(text, position))
        kind = match.lastgroup
        assert kind is not None, "every alternative of the token pattern is a named group"
        tokens.append(_Token(kind=kind, text=match.group(kind), offset=match.start(kind)))
        position = match.end()
    tokens.append(_Token(kind="end", text="", offset=len(text)))
    return tokens


def _byte_offset(text: str, position: int) -> int:
    return len(text[:position].encode("utf-8"))


class _Parser:
    """Recursive descent over the token list, one method per grammar rule."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def _advance(self) -> _Token:
        token = self.current
        self.index += 1
        return token

    def _error(self, message: str, expected: tuple[str, ...] = ()) -> ExpressionSyntaxError:
        token = self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        return ExpressionSyntaxError(f"{message}, found {found}", _byte_offset(self.text, token.offset), expected)

    def _expect_op(self, op: str) -> None:
        if self.current.kind != "op" or self.current.text != op:
            raise self._error("Unexpected token", (repr(op),))
        self._advance()

    def parse(self) -> ExpressionAst:
        node = self.expr()
        if self.current.kind != "end":
            raise self._error("Unexpected token", ("operator", "end of input"))
        return node

    def expr(self) -> ExpressionAst:
        node = self.term()
        while self.current.kind == "op" and self.current.text in ("+", "-"):
            op = self._advance().text
            node = BinaryOp(op=op, left=node, right=self.term())
        return node

    def term(self) -> ExpressionAst:
        node = self.factor()
        while self.current.kind == "op" and self.current.text in ("*", "/"):
            op = self._advance().text
            node = BinaryOp(op=op, left=node, right=self.factor())
        return node

    def factor(self) -> ExpressionAst:
        node = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            self._advance()
            token = self.current
            if token.kind != "number" or not token.text.isdigit():
                raise self._error("Exponent must be a nonnegative integer", ("integer",))
            self._advance()
            node = Power(base=node, exponent=int(token.text))
        return node

    def atom(self) -> ExpressionAst:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Number(Fraction(token.text))
        if token.kind == "name":
            self._advance()
            if token.text == "x":
                return Variable()
            if token.text not in FUNCTIONS:
                offset = _byte_offset(self.text, token.offset)
                raise UnknownFunctionError(f"Unknown function or name {token.text!r}", offset, FUNCTIONS)
            self._expect_op("(")
            argument = self.expr()
            self._expect_op(")")
            return Call(name=token.text, argument=argument)
        if token.kind == "op" and token.text == "(":
            self._advance()
            node = self.expr()
            self._expect_op(")")
            return node
        if token.kind == "op" and token.text == "-":
            self._advance()
            return Negate(self.atom())
        raise self._error("Unexpected token", _ATOM_START)


def parse_expression(text: str) -> ExpressionAst:
    """Parse an expression in x.

    Raises:
        ExpressionSyntaxError: With the byte offset of the offending token and the tokens that were expected.
        UnknownFunctionError: If a name other than x or a known function appears.
    """
    return _Parser(text).parse()
