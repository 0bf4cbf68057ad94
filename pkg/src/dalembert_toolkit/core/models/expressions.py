"""Arithmetic expression trees and their parser.

Expressions are used for every user supplied function: candidate
solutions f, the profile h of closed form solutions, perturbation
factors s and r, test functions phi and conservation law components.

Grammar (version ``GRAMMAR_VERSION``)::

    expression := term (("+" | "-") term)*
    term       := unary (("*" | "/") unary)*
    unary      := ("+" | "-") unary | power
    power      := atom (("^" | "**") unary)?
    atom       := NUMBER | IDENTIFIER | FUNCTION "(" expression ")"
                | "(" expression ")"
    FUNCTION   := "exp" | "log" | "sin" | "cos"

Identifiers start with a letter or underscore and may contain letters,
digits and underscores. Powers are right associative and bind tighter
than unary minus, so ``-x^2`` is ``-(x^2)``.
"""
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Mapping, Union

from .exceptions import ExpressionSyntaxError, JetDomainError
from .jets import Jet, jet_cos, jet_exp, jet_log, jet_pow, jet_sin

__all__ = (
    "GRAMMAR_VERSION",
    "FUNCTIONS",
    "Node",
    "Number",
    "Symbol",
    "Negate",
    "BinaryOp",
    "Call",
    "parse_expression",
)

GRAMMAR_VERSION = "1.0"

Value = Union[int, float, Jet]


def _real_log(value: float) -> float:
    if not value > 0:
        raise JetDomainError(f"Logarithm of a non-positive value ({value}).")
    return math.log(value)


def _real_pow(base: float, exponent: float) -> float:
    if base < 0 and not float(exponent).is_integer():
        raise JetDomainError(f"Non-integer power of a negative value ({base}).")
    if base == 0 and exponent < 0:
        raise JetDomainError("Negative power of zero.")
    return base**exponent


# Real and jet implementations of the supported functions.
FUNCTIONS: Dict[str, Dict[str, Callable]] = {
    "exp": {"real": math.exp, "jet": jet_exp},
    "log": {"real": _real_log, "jet": jet_log},
    "sin": {"real": math.sin, "jet": jet_sin},
    "cos": {"real": math.cos, "jet": jet_cos},
}


class Node:
    """Base class of expression tree nodes."""

    def evaluate(self, env: Mapping[str, Value]) -> Value:
        """Evaluate the expression.

        Parameters
        ----------
        env
            Values of the identifiers. Values can be numbers or jets;
            jets make the whole evaluation a jet evaluation.
        """
        raise NotImplementedError

    def identifiers(self) -> FrozenSet[str]:
        """Names of all identifiers occurring in the expression."""
        raise NotImplementedError


@dataclass(frozen=True)
class Number(Node):
    """Numeric literal."""

    value: Union[int, float]

    # docstr-coverage: inherited
    def evaluate(self, env):
        return self.value

    # docstr-coverage: inherited
    def identifiers(self):
        return frozenset()

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Symbol(Node):
    """Identifier; a variable or a named input."""

    name: str

    # docstr-coverage: inherited
    def evaluate(self, env):
        try:
            return env[self.name]
        except KeyError:
            raise ExpressionSyntaxError(f"Unknown identifier '{self.name}'.") from None

    # docstr-coverage: inherited
    def identifiers(self):
        return frozenset((self.name,))

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Negate(Node):
    """Unary minus."""

    operand: Node

    # docstr-coverage: inherited
    def evaluate(self, env):
        return -self.operand.evaluate(env)

    # docstr-coverage: inherited
    def identifiers(self):
        return self.operand.identifiers()

    def __str__(self):
        return f"(-{self.operand})"


@dataclass(frozen=True)
class BinaryOp(Node):
    """Binary arithmetic operation: one of + - * / ^."""

    op: str
    left: Node
    right: Node

    # docstr-coverage: inherited
    def evaluate(self, env):
        left = self.left.evaluate(env)
        right = self.right.evaluate(env)
        if self.op == "+":
            return left + right
        if self.op == "-":
            return left - right
        if self.op == "*":
            return left * right
        if self.op == "/":
            if not isinstance(right, Jet) and right == 0:
                raise JetDomainError("Division by zero.")
            if isinstance(right, Jet) and right.value == 0:
                raise JetDomainError("Division by a jet with zero constant term.")
            if isinstance(left, int) and isinstance(right, int):
                return Fraction(left, right)
            return left / right
        if self.op == "^":
            if isinstance(left, Jet):
                return jet_pow(left, right)
            if isinstance(right, Jet):
                base = Jet.constant(left, right.base_point, right.order)
                return jet_pow(base, right)
            return _real_pow(left, right)
        raise ValueError(f"Unknown operator '{self.op}'.")

    # docstr-coverage: inherited
    def identifiers(self):
        return self.left.identifiers() | self.right.identifiers()

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call(Node):
    """Application of one of the supported functions."""

    function: str
    argument: Node

    # docstr-coverage: inherited
    def evaluate(self, env):
        value = self.argument.evaluate(env)
        kind = "jet" if isinstance(value, Jet) else "real"
        return FUNCTIONS[self.function][kind](value)

    # docstr-coverage: inherited
    def identifiers(self):
        return self.argument.identifiers()

    def __str__(self):
        return f"{self.function}({self.argument})"


# Parsing

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()])"
    r")"
)


def _tokenize(source: str):
    position = 0
    tokens = []
    source = source.rstrip()
    while position < len(source):
        match = _TOKEN.match(source, position)
        if match is None or match.end() == position:
            raise ExpressionSyntaxError(
                f"Unexpected character '{source[position:].lstrip()[:1]}'", position
            )
        kind = match.lastgroup
        text = match.group(kind)
        if kind == "op" and text == "**":
            text = "^"
        tokens.append((kind, text, match.start(kind)))
        position = match.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, text: str):
        kind, value, position = self.current
        if value != text or kind != "op":
            found = value or "end of input"
            raise ExpressionSyntaxError(f"Expected '{text}', found '{found}'", position)
        self.advance()

    def parse(self) -> Node:
        node = self.expression()
        kind, value, position = self.current
        if kind != "end":
            raise ExpressionSyntaxError(f"Unexpected '{value}'", position)
        return node

    def expression(self) -> Node:
        node = self.term()
        while self.current[0] == "op" and self.current[1] in "+-":
            op = self.advance()[1]
            node = BinaryOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.current[0] == "op" and self.current[1] in "*/":
            op = self.advance()[1]
            node = BinaryOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.current[0] == "op" and self.current[1] in "+-":
            op = self.advance()[1]
            operand = self.unary()
            return Negate(operand) if op == "-" else operand
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        if self.current[0] == "op" and self.current[1] == "^":
            self.advance()
            node = BinaryOp("^", node, self.unary())
        return node

    def atom(self) -> Node:
        kind, value, position = self.advance()
        if kind == "number":
            is_integer = re.fullmatch(r"\d+", value) is not None
            return Number(int(value) if is_integer else float(value))
        if kind == "name":
            if self.current[0] == "op" and self.current[1] == "(":
                if value not in FUNCTIONS:
                    raise ExpressionSyntaxError(f"Unknown function '{value}'", position)
                self.advance()
                argument = self.expression()
                self.expect(")")
                return Call(value, argument)
            if value in FUNCTIONS:
                raise ExpressionSyntaxError(
                    f"Function '{value}' must be called with an argument", position
                )
            return Symbol(value)
        if kind == "op" and value == "(":
            node = self.expression()
            self.expect(")")
            return node
        found = value or "end of input"
        raise ExpressionSyntaxError(f"Unexpected '{found}'", position)


def parse_expression(source: str) -> Node:
    """Parse an expression string into an expression tree.

    Raises
    ------
    ExpressionSyntaxError
        If `source` does not follow the grammar (see module docs).
    """
    if not isinstance(source, str) or not source.strip():
        raise ExpressionSyntaxError("Empty expression")
    return _Parser(source).parse()
