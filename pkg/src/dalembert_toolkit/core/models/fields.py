"""Scalar fields evaluable to jets.

A field is a smooth (where defined) function of ``n`` real variables,
i.e. a section of the trivial bundle ``M x R -> M``. Every field can be
evaluated to a `Jet` of any truncation order at any point of its
domain. Fields support the arithmetic operators, which build composite
fields lazily.
"""
from abc import ABC, abstractmethod
from numbers import Number
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import (
    ExpressionSyntaxError,
    JetDomainError,
    JetShapeError,
    ToolkitError,
)
from .expressions import Node, parse_expression
from .jets import Jet, lift

__all__ = (
    "Field",
    "ExpressionField",
    "ConstantField",
    "CallableField",
    "ProductField",
    "AxisField",
    "CompositeField",
    "default_variables",
    "jet_eval",
)


def default_variables(n: int) -> Tuple[str, ...]:
    """Conventional variable names: x, y, z up to three, x1..xn beyond."""
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{i}" for i in range(1, n + 1))


def _any_dependence(answers) -> Optional[bool]:
    answers = list(answers)
    if any(answers):
        return True
    if any(a is None for a in answers):
        return None
    return False


def _as_point(point: Sequence, n: int) -> tuple:
    point = tuple(c.item() if isinstance(c, np.generic) else c for c in point)
    if len(point) != n:
        raise JetShapeError(f"Expected a point with {n} coordinates, got {len(point)}.")
    return point


class Field(ABC):
    """A scalar function of `n` variables evaluable to jets."""

    n: int

    @abstractmethod
    def _jet(self, point: tuple, order: int) -> Jet:
        """Evaluate the jet at a validated point."""

    def jet(self, point: Sequence, order: int) -> Jet:
        """The jet of the field at `point`, truncated at `order`.

        Raises
        ------
        JetDomainError
            If the field is not defined at `point`.
        """
        if order < 0:
            raise JetShapeError("The truncation order can't be negative.")
        point = _as_point(point, self.n)
        try:
            result = self._jet(point, order)
        except ZeroDivisionError as e:
            raise JetDomainError(f"Division by zero at {point}.") from e
        except (ValueError, OverflowError) as e:
            if isinstance(e, ToolkitError):
                raise
            raise JetDomainError(f"Field undefined at {point}: {e}") from e
        if not isinstance(result, Jet):
            result = Jet.constant(result, point, order)
        return result

    def __call__(self, point: Sequence) -> float:
        """The value of the field at `point`."""
        return float(self.jet(point, 0).value)

    def depends_on(self, axis: int) -> Optional[bool]:
        """Whether the field depends on the variable `axis`.

        Returns `None` when this can't be decided structurally.
        """
        return None

    def _combine(self, op: str, other, reflected: bool = False):
        if isinstance(other, Number):
            other = ConstantField(other, self.n)
        if not isinstance(other, Field):
            return NotImplemented
        if other.n != self.n:
            raise JetShapeError("Fields must have the same number of variables.")
        if reflected:
            return CompositeField(op, other, self)
        return CompositeField(op, self, other)

    def __add__(self, other):
        return self._combine("+", other)

    def __radd__(self, other):
        return self._combine("+", other, reflected=True)

    def __sub__(self, other):
        return self._combine("-", other)

    def __rsub__(self, other):
        return self._combine("-", other, reflected=True)

    def __mul__(self, other):
        return self._combine("*", other)

    def __rmul__(self, other):
        return self._combine("*", other, reflected=True)

    def __truediv__(self, other):
        return self._combine("/", other)

    def __rtruediv__(self, other):
        return self._combine("/", other, reflected=True)

    def __neg__(self):
        return self._combine("*", -1, reflected=True)


class ExpressionField(Field):
    """A field given by an expression tree over named variables."""

    def __init__(
        self,
        expression: Union[str, Node],
        variables: Optional[Sequence[str]] = None,
        n: Optional[int] = None,
    ):
        """A field given by an expression tree over named variables.

        Parameters
        ----------
        expression
            Expression string (see `core.models.expressions`) or an
            already parsed tree.
        variables
            Names of the variables, in axis order. Defaults to
            `default_variables(n)`.
        n
            Number of variables; only used when `variables` is omitted.

        Raises
        ------
        ExpressionSyntaxError
            If the expression can't be parsed or uses identifiers that
            are not variables.
        """
        tree = parse_expression(expression) if isinstance(expression, str) else expression
        if variables is None:
            if n is None:
                raise ValueError("Either `variables` or `n` must be provided.")
            variables = default_variables(n)
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"Duplicate variable names in {variables}.")

        unknown = tree.identifiers() - set(variables)
        if unknown:
            raise ExpressionSyntaxError(
                f"Unknown identifier(s) {', '.join(sorted(unknown))}; "
                f"expected only {', '.join(variables)}."
            )
        self.tree = tree
        self.variables = variables
        self.n = len(variables)
        self.source = expression if isinstance(expression, str) else str(tree)

    # docstr-coverage: inherited
    def _jet(self, point, order):
        env = {
            name: Jet.variable(axis, point, order)
            for axis, name in enumerate(self.variables)
        }
        return self.tree.evaluate(env)

    # docstr-coverage: inherited
    def depends_on(self, axis):
        return self.variables[axis] in self.tree.identifiers()

    def __repr__(self):
        return f"ExpressionField({self.source!r}, variables={self.variables})"


class ConstantField(Field):
    """A constant function of `n` variables."""

    def __init__(self, value: Number, n: int):
        """A constant function of `n` variables.

        Parameters
        ----------
        value
            The constant.
        n
            Number of variables.
        """
        self.value = value
        self.n = n

    # docstr-coverage: inherited
    def _jet(self, point, order):
        return Jet.constant(self.value, point, order)

    # docstr-coverage: inherited
    def depends_on(self, axis):
        return False


class CallableField(Field):
    """A field computed by a Python callable operating on jets.

    The callable receives one jet per variable (the coordinate
    functions) and returns a jet or a number. It may use jet arithmetic
    and the jet functions of `core.models.jets`.
    """

    def __init__(self, function: Callable[..., Union[Jet, Number]], n: int):
        """A field computed by a Python callable operating on jets.

        Parameters
        ----------
        function
            Callable taking `n` coordinate jets.
        n
            Number of variables.
        """
        self.function = function
        self.n = n

    # docstr-coverage: inherited
    def _jet(self, point, order):
        coordinates = [Jet.variable(axis, point, order) for axis in range(self.n)]
        return self.function(*coordinates)


class ProductField(Field):
    """Product of factor fields sharing the same variables."""

    def __init__(self, factors: Sequence[Field]):
        """Product of factor fields sharing the same variables.

        Parameters
        ----------
        factors
            The factors; at least one.
        """
        if not factors:
            raise ValueError("A product needs at least one factor.")
        n = factors[0].n
        if any(f.n != n for f in factors):
            raise JetShapeError("All factors must have the same number of variables.")
        self.factors = tuple(factors)
        self.n = n

    # docstr-coverage: inherited
    def _jet(self, point, order):
        result = self.factors[0].jet(point, order)
        for factor in self.factors[1:]:
            result = result * factor.jet(point, order)
        return result

    # docstr-coverage: inherited
    def depends_on(self, axis):
        return _any_dependence(f.depends_on(axis) for f in self.factors)


class AxisField(Field):
    """A field of one variable viewed as a field of `n` variables."""

    def __init__(self, field: Field, axis: int, n: int):
        """A field of one variable viewed as a field of `n` variables.

        Parameters
        ----------
        field
            Field of a single variable.
        axis
            The variable of the result the field depends on.
        n
            Number of variables of the result.
        """
        if field.n != 1:
            raise JetShapeError("Only fields of one variable can be embedded.")
        if not 0 <= axis < n:
            raise JetShapeError(f"Axis {axis} out of range for dimension {n}.")
        self.field = field
        self.axis = axis
        self.n = n

    # docstr-coverage: inherited
    def _jet(self, point, order):
        inner = self.field.jet((point[self.axis],), order)
        return lift(inner, point, (self.axis,))

    # docstr-coverage: inherited
    def depends_on(self, axis):
        if axis != self.axis:
            return False
        return self.field.depends_on(0)


class CompositeField(Field):
    """Arithmetic combination of two fields."""

    _OPERATIONS = {
        "+": lambda a, b: a + b,
        "-": lambda a, b: a - b,
        "*": lambda a, b: a * b,
        "/": lambda a, b: a / b,
    }

    def __init__(self, op: str, left: Field, right: Field):
        """Arithmetic combination of two fields.

        Parameters
        ----------
        op
            One of + - * /.
        left
            Left operand.
        right
            Right operand.
        """
        if op not in self._OPERATIONS:
            raise ValueError(f"Unknown operator '{op}'.")
        self.op = op
        self.left = left
        self.right = right
        self.n = left.n

    # docstr-coverage: inherited
    def _jet(self, point, order):
        left = self.left.jet(point, order)
        right = self.right.jet(point, order)
        if self.op == "/" and right.value == 0:
            raise JetDomainError(f"Division by a vanishing field at {point}.")
        return self._OPERATIONS[self.op](left, right)

    # docstr-coverage: inherited
    def depends_on(self, axis):
        return _any_dependence(
            (self.left.depends_on(axis), self.right.depends_on(axis))
        )


def jet_eval(field: Field, point: Sequence[float], order: int) -> Jet:
    """The jet of `field` at `point`, truncated at `order`.

    Raises
    ------
    JetDomainError
        If the field is not defined at `point` (e.g. logarithm of
        a non-positive value).
    """
    return field.jet(point, order)
