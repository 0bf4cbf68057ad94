"""Truncated multivariate Taylor expansions (jets).

A `Jet` holds the Taylor coefficients ``c_alpha = d^alpha f / alpha!`` of
a scalar function at a base point, for every multi-index with
``|alpha| <= order``. Coefficients are stored per total degree, as
sparse mappings from multi-index to coefficient, so that truncated
products only ever touch pairs of homogeneous parts whose degrees fit
under the truncation order.

Elementary functions are composed with the degree recurrences obtained
from the Euler operator ``E = sum_i x_i d/dx_i``, which acts on
a homogeneous part of degree ``k`` as multiplication by ``k``. For
example ``g = log f`` satisfies ``f * E(g) = E(f)``, which determines
the degree-``k`` part of ``g`` from lower degree parts only. No series
composition is needed and the result is exact at the truncation order.

Coefficients may be floats or `fractions.Fraction` values. With
fractions, the arithmetic operations (including division and integer
powers) are exact, which is used as the exact-arithmetic test mode.
Transcendental functions always return floats.
"""
import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from numbers import Number
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

import numpy as np

from .exceptions import JetDomainError, JetShapeError, OrderOverflowError

__all__ = (
    "MultiIndex",
    "Jet",
    "multi_indices",
    "homogeneous_indices",
    "index_factorial",
    "unit_index",
    "jet_arith",
    "jet_exp",
    "jet_log",
    "jet_sin",
    "jet_cos",
    "jet_pow",
    "extract_derivative",
    "differentiate",
    "truncate",
    "lift",
)

# One non-negative exponent per variable.
MultiIndex = Tuple[int, ...]

# Homogeneous part: mapping of multi-indices of a single total degree to
# their coefficients. Missing keys are zeros.
_Part = Dict[MultiIndex, Number]

Scalar = Union[int, float, Fraction]


@lru_cache(maxsize=None)
def homogeneous_indices(n: int, degree: int) -> Tuple[MultiIndex, ...]:
    """All multi-indices of length `n` with total order `degree`.

    The indices are sorted in descending lexicographic order, so that
    e.g. for ``n = 2, degree = 2`` the result is
    ``((2, 0), (1, 1), (0, 2))``.
    """
    result = []
    for combo in combinations_with_replacement(range(n), degree):
        alpha = [0] * n
        for axis in combo:
            alpha[axis] += 1
        result.append(tuple(alpha))
    return tuple(sorted(result, reverse=True))


@lru_cache(maxsize=None)
def multi_indices(n: int, order: int) -> Tuple[MultiIndex, ...]:
    """All multi-indices of length `n` and total order at most `order`.

    Graded: lower total orders come first.
    """
    return tuple(
        alpha for degree in range(order + 1) for alpha in homogeneous_indices(n, degree)
    )


def index_factorial(alpha: Sequence[int]) -> int:
    """alpha! = alpha_1! * ... * alpha_n!"""
    return math.prod(math.factorial(a) for a in alpha)


def unit_index(n: int, axis: int) -> MultiIndex:
    """The multi-index of the first derivative along `axis`."""
    return tuple(1 if i == axis else 0 for i in range(n))


def _validate_index(alpha: Sequence[int], n: int) -> MultiIndex:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != n:
        raise JetShapeError(f"Multi-index {alpha} does not have length {n}.")
    if any(a < 0 for a in alpha):
        raise JetShapeError(f"Multi-index {alpha} has negative exponents.")
    return alpha


# Homogeneous part arithmetic


def _part_add(p: _Part, q: _Part, sign: int = 1) -> _Part:
    result = dict(p)
    for alpha, value in q.items():
        result[alpha] = result.get(alpha, 0) + sign * value
    return result


def _part_scale(p: _Part, factor: Scalar) -> _Part:
    return {alpha: value * factor for alpha, value in p.items()}


def _part_mul(p: _Part, q: _Part) -> _Part:
    result = {}
    for alpha, a in p.items():
        for beta, b in q.items():
            key = tuple(i + j for i, j in zip(alpha, beta))
            result[key] = result.get(key, 0) + a * b
    return result


def _weighted_sum(terms: Iterable[Tuple[Scalar, _Part, _Part]]) -> _Part:
    """Sum of ``weight * (p * q)`` over the given triples."""
    result = {}
    for weight, p, q in terms:
        if not p or not q or weight == 0:
            continue
        for alpha, value in _part_mul(p, q).items():
            result[alpha] = result.get(alpha, 0) + weight * value
    return result


class Jet:
    """Truncated Taylor expansion of a scalar function at a point.

    Instances are immutable. Arithmetic operators are supported between
    jets sharing dimension, order and base point, and between jets and
    plain numbers.
    """

    __slots__ = ("_n", "_order", "_base_point", "_parts")

    def __init__(
        self,
        n: int,
        order: int,
        coeffs: Mapping[Sequence[int], Scalar],
        base_point: Sequence[float],
    ):
        """Truncated Taylor expansion of a scalar function at a point.

        Parameters
        ----------
        n
            Number of variables.
        order
            Truncation order K; only multi-indices with total order up
            to K are kept.
        coeffs
            Mapping of multi-indices to Taylor coefficients
            (derivative / alpha!). Missing indices are zeros.
        base_point
            The point the expansion is taken at.
        """
        if n < 1:
            raise JetShapeError("A jet needs at least one variable.")
        if order < 0:
            raise JetShapeError("The truncation order can't be negative.")
        base_point = tuple(base_point)
        if len(base_point) != n:
            raise JetShapeError(
                f"Base point {base_point} does not have {n} coordinates."
            )

        parts = [{} for _ in range(order + 1)]
        for alpha, value in coeffs.items():
            alpha = _validate_index(alpha, n)
            degree = sum(alpha)
            if degree > order:
                raise OrderOverflowError(
                    f"Multi-index {alpha} exceeds the truncation order {order}."
                )
            if value != 0:
                parts[degree][alpha] = value

        self._n = n
        self._order = order
        self._base_point = base_point
        self._parts = tuple(parts)

    @classmethod
    def _from_parts(cls, n, order, base_point, parts) -> "Jet":
        jet = cls.__new__(cls)
        jet._n = n
        jet._order = order
        jet._base_point = base_point
        jet._parts = tuple(
            {alpha: value for alpha, value in part.items() if value != 0}
            for part in parts
        )
        return jet

    @classmethod
    def constant(cls, value: Scalar, base_point: Sequence[float], order: int) -> "Jet":
        """The jet of a constant function."""
        n = len(base_point)
        return cls(n, order, {(0,) * n: value}, base_point)

    @classmethod
    def variable(cls, axis: int, base_point: Sequence[float], order: int) -> "Jet":
        """The jet of the coordinate function x^axis."""
        n = len(base_point)
        if not 0 <= axis < n:
            raise JetShapeError(f"Axis {axis} out of range for dimension {n}.")
        coeffs = {(0,) * n: base_point[axis]}
        if order >= 1:
            coeffs[unit_index(n, axis)] = 1
        return cls(n, order, coeffs, base_point)

    @property
    def n(self) -> int:
        """Number of variables."""
        return self._n

    @property
    def order(self) -> int:
        """Truncation order."""
        return self._order

    @property
    def base_point(self) -> Tuple[float, ...]:
        """The point the expansion is taken at."""
        return self._base_point

    @property
    def value(self) -> Scalar:
        """The value of the function at the base point."""
        return self._parts[0].get((0,) * self._n, 0)

    @property
    def coeffs(self) -> Mapping[MultiIndex, Scalar]:
        """Read-only mapping of the non-zero Taylor coefficients."""
        merged = {}
        for part in self._parts:
            merged.update(part)
        return MappingProxyType(merged)

    def coefficient(self, alpha: Sequence[int]) -> Scalar:
        """The Taylor coefficient of `alpha` (zero when not stored)."""
        alpha = _validate_index(alpha, self._n)
        degree = sum(alpha)
        if degree > self._order:
            raise OrderOverflowError(
                f"Multi-index {alpha} exceeds the truncation order {self._order}."
            )
        return self._parts[degree].get(alpha, 0)

    def part(self, degree: int) -> Mapping[MultiIndex, Scalar]:
        """The homogeneous part of the given total degree."""
        return MappingProxyType(self._parts[degree])

    def as_array(self) -> np.ndarray:
        """Dense coefficient vector ordered as `multi_indices(n, order)`."""
        return np.array(
            [float(self.coefficient(alpha)) for alpha in multi_indices(self._n, self._order)]
        )

    def is_finite(self) -> bool:
        """Whether all coefficients are finite."""
        return all(
            math.isfinite(value) for part in self._parts for value in part.values()
        )

    # Arithmetic

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if (
                other._n != self._n
                or other._order != self._order
                or other._base_point != self._base_point
            ):
                raise JetShapeError(
                    "Jets must share dimension, truncation order and base point "
                    f"(got n={self._n}, K={self._order} at {self._base_point} and "
                    f"n={other._n}, K={other._order} at {other._base_point})."
                )
            return other
        if isinstance(other, Number):
            return Jet.constant(other, self._base_point, self._order)
        return NotImplemented

    def _new(self, parts) -> "Jet":
        return Jet._from_parts(self._n, self._order, self._base_point, parts)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(_part_add(p, q) for p, q in zip(self._parts, other._parts))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(
            _part_add(p, q, sign=-1) for p, q in zip(self._parts, other._parts)
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return self._new(_part_scale(p, -1) for p in self._parts)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Number):
            return self._new(_part_scale(p, other) for p in self._parts)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        parts = [
            _weighted_sum(
                (1, self._parts[j], other._parts[k - j]) for j in range(k + 1)
            )
            for k in range(self._order + 1)
        ]
        return self._new(parts)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            if other == 0:
                raise ZeroDivisionError("Division of a jet by zero.")
            if isinstance(other, int):
                other = Fraction(other)
            return self._new(_part_scale(p, 1 / other) for p in self._parts)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.reciprocal()

    def __pow__(self, exponent):
        return jet_pow(self, exponent)

    def reciprocal(self) -> "Jet":
        """The jet of 1/f. Requires a non-zero value."""
        b0 = self.value
        if b0 == 0:
            raise JetDomainError("Division by a jet with zero constant term.")
        inverse = 1 / Fraction(b0) if isinstance(b0, int) else 1 / b0
        parts = [{(0,) * self._n: inverse}]
        for k in range(1, self._order + 1):
            acc = _weighted_sum((1, self._parts[j], parts[k - j]) for j in range(1, k + 1))
            parts.append(_part_scale(acc, -inverse))
        return self._new(parts)

    def __repr__(self):
        return (
            f"Jet(n={self._n}, order={self._order}, base_point={self._base_point}, "
            f"coeffs={dict(self.coeffs)})"
        )


def _constant_part(n: int, value: Scalar) -> _Part:
    return {(0,) * n: value}


def _exact_div(value: Scalar, k: int) -> Scalar:
    # int / int would silently turn exact coefficients into floats
    if isinstance(value, (int, Fraction)):
        return Fraction(value, 1) / k
    return value / k


def _part_div(p: _Part, k: Scalar) -> _Part:
    return {alpha: _exact_div(value, k) for alpha, value in p.items()}


def jet_exp(f: Jet) -> Jet:
    """The jet of exp(f)."""
    parts = [_constant_part(f.n, math.exp(f.value))]
    for k in range(1, f.order + 1):
        acc = _weighted_sum((j, f._parts[j], parts[k - j]) for j in range(1, k + 1))
        parts.append(_part_div(acc, k))
    return f._new(parts)


def jet_log(f: Jet) -> Jet:
    """The jet of log(f).

    Obtained by integrating d(log f) = df / f degree by degree.

    Raises
    ------
    JetDomainError
        If the value of `f` is not positive.
    """
    f0 = f.value
    if not f0 > 0:
        raise JetDomainError(f"Logarithm of a non-positive value ({f0}).")
    parts = [_constant_part(f.n, math.log(f0))]
    for k in range(1, f.order + 1):
        acc = _part_scale(f._parts[k], k)
        correction = _weighted_sum(
            (j, parts[j], f._parts[k - j]) for j in range(1, k)
        )
        acc = _part_add(acc, correction, sign=-1)
        parts.append(_part_div(acc, k * f0))
    return f._new(parts)


def _sin_cos(f: Jet) -> Tuple[Jet, Jet]:
    s_parts = [_constant_part(f.n, math.sin(f.value))]
    c_parts = [_constant_part(f.n, math.cos(f.value))]
    for k in range(1, f.order + 1):
        s_acc = _weighted_sum((j, f._parts[j], c_parts[k - j]) for j in range(1, k + 1))
        c_acc = _weighted_sum((j, f._parts[j], s_parts[k - j]) for j in range(1, k + 1))
        s_parts.append(_part_div(s_acc, k))
        c_parts.append(_part_div(c_acc, -k))
    return f._new(s_parts), f._new(c_parts)


def jet_sin(f: Jet) -> Jet:
    """The jet of sin(f)."""
    return _sin_cos(f)[0]


def jet_cos(f: Jet) -> Jet:
    """The jet of cos(f)."""
    return _sin_cos(f)[1]


def jet_pow(f: Jet, exponent: Union[Scalar, Jet]) -> Jet:
    """The jet of f ** exponent.

    Integer exponents use repeated multiplication, so they are exact and
    allow any base value (non-zero for negative exponents). Real
    exponents require a positive base. A jet exponent is handled as
    ``exp(exponent * log(f))``.
    """
    if isinstance(exponent, Jet):
        if exponent.order == 0 or not any(exponent._parts[1:]):
            exponent = exponent.value
        else:
            return jet_exp(exponent * jet_log(f))

    if isinstance(exponent, float) and exponent.is_integer():
        exponent = int(exponent)
    if isinstance(exponent, Fraction) and exponent.denominator == 1:
        exponent = int(exponent)

    if isinstance(exponent, int):
        if exponent < 0:
            return jet_pow(f, -exponent).reciprocal()
        result = Jet.constant(1, f.base_point, f.order)
        base = f
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    f0 = f.value
    if not f0 > 0:
        raise JetDomainError(f"Non-integer power of a non-positive value ({f0}).")
    parts = [_constant_part(f.n, f0**exponent)]
    for k in range(1, f.order + 1):
        acc = _weighted_sum(
            (exponent * j - (k - j), f._parts[j], parts[k - j]) for j in range(1, k + 1)
        )
        parts.append(_part_div(acc, k * f0))
    return f._new(parts)


_ARITHMETIC = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    """Truncated Taylor arithmetic.

    Parameters
    ----------
    a
        Left operand.
    b
        Right operand; must share dimension, order and base point with
        `a`.
    op
        One of "add", "sub", "mul", "div".

    Raises
    ------
    JetShapeError
        If the jets don't match.
    JetDomainError
        On division by a jet with zero constant term.
    """
    try:
        operation = _ARITHMETIC[op]
    except KeyError:
        raise ValueError(f"Unknown jet operation '{op}'.") from None
    if not isinstance(a, Jet) or not isinstance(b, Jet):
        raise JetShapeError("Both operands must be jets.")
    a._coerce(b)
    return operation(a, b)


def extract_derivative(j: Jet, alpha: Sequence[int]) -> Scalar:
    """The mixed partial derivative d^alpha f at the base point.

    Raises
    ------
    OrderOverflowError
        If ``|alpha|`` exceeds the jet's truncation order.
    """
    alpha = _validate_index(alpha, j.n)
    return j.coefficient(alpha) * index_factorial(alpha)


def differentiate(j: Jet, axis: int) -> Jet:
    """The jet of d f / d x^axis, truncated one order lower."""
    if j.order < 1:
        raise OrderOverflowError("Can't differentiate a jet of order 0.")
    if not 0 <= axis < j.n:
        raise JetShapeError(f"Axis {axis} out of range for dimension {j.n}.")
    parts = [{} for _ in range(j.order)]
    for degree in range(1, j.order + 1):
        for alpha, value in j._parts[degree].items():
            exponent = alpha[axis]
            if exponent == 0:
                continue
            beta = alpha[:axis] + (exponent - 1,) + alpha[axis + 1 :]
            parts[degree - 1][beta] = value * exponent
    return Jet._from_parts(j.n, j.order - 1, j.base_point, parts)


def truncate(j: Jet, order: int) -> Jet:
    """The same expansion, truncated at a lower order."""
    if order > j.order:
        raise OrderOverflowError(
            f"Can't raise the truncation order from {j.order} to {order}."
        )
    return Jet._from_parts(j.n, order, j.base_point, j._parts[: order + 1])


def lift(j: Jet, base_point: Sequence[float], axes: Sequence[int]) -> Jet:
    """Embed a jet of fewer variables into a higher dimensional jet.

    Parameters
    ----------
    j
        The jet to embed.
    base_point
        Base point of the result. Its coordinates along `axes` must
        match `j.base_point`.
    axes
        ``axes[i]`` is the axis of the result that variable `i` of `j`
        becomes.
    """
    base_point = tuple(base_point)
    n = len(base_point)
    if len(axes) != j.n:
        raise JetShapeError(f"Expected {j.n} axes, got {len(axes)}.")
    if tuple(base_point[a] for a in axes) != j.base_point:
        raise JetShapeError("The base points of the jets don't match.")
    parts = []
    for part in j._parts:
        lifted = {}
        for alpha, value in part.items():
            beta = [0] * n
            for exponent, axis in zip(alpha, axes):
                beta[axis] = exponent
            lifted[tuple(beta)] = value
        parts.append(lifted)
    return Jet._from_parts(n, j.order, base_point, parts)
