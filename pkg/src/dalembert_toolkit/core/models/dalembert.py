"""The n-d'Alembert equation, its residuals and structural constants.

The equation ``(d'A)_n`` is ``d^n log f / dx^1 ... dx^n = 0``. On the
locus ``f != 0`` it is equivalent to the vanishing of the polynomial

    F_n = f^n * d^n log f / dx^1 ... dx^n,

a polynomial in the partial derivatives of ``f``. Expanding the
logarithmic derivative gives one term per set partition ``P`` of the
axes {1..n}:

    F_n = sum_P (-1)^(|P|-1) (|P|-1)! u^(n-|P|) prod_{B in P} u_B

where ``u_B`` is the mixed partial derivative along the axes in block
``B``. For n = 2 this is ``u_xy u - u_x u_y``; for n = 3 it is
``u_xyz u^2 - (u_xy u_z + u_xz u_y + u_yz u_x) u + 2 u_x u_y u_z``.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from .exceptions import (
    DimensionOverflow,
    JetShapeError,
    NonFiniteError,
    OutsideRegularLocus,
    UnsupportedDimension,
)
from .fields import Field, ProductField, default_variables, jet_eval
from .jets import Jet, extract_derivative, jet_log

__all__ = (
    "DEFAULT_RESIDUAL_TOLERANCE",
    "POLYNOMIAL_FORM_MAX_N",
    "LOG_FORM",
    "POLYNOMIAL_FORM",
    "DAlembertProblem",
    "ProductSolution",
    "PolynomialTerm",
    "WhitneyCheck",
    "FunctionalStability",
    "PointResidual",
    "SolutionVerification",
    "residual_log",
    "residual_poly",
    "polynomial_form",
    "format_polynomial",
    "symbol_dimension",
    "equation_dimension",
    "whitney_check",
    "prolongation_residuals_2d",
    "log_prolongation_2d",
    "functional_stability",
    "admits_exotic_cauchy_data",
    "verify_solution",
)

logger = logging.getLogger(__name__)

DEFAULT_RESIDUAL_TOLERANCE = 1e-9

# Largest n for which the polynomial form is expanded (Bell(4) = 15 terms).
POLYNOMIAL_FORM_MAX_N = 4

# Dimension counts must fit a signed 64-bit integer.
MAX_DIMENSION = 2**63 - 1

LOG_FORM = "log"
POLYNOMIAL_FORM = "polynomial"


def _check_dimension(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"The d'Alembert equation needs n >= 2, got {n}.")


def _check_field(f: Field, n: Optional[int]) -> int:
    if n is None:
        return f.n
    _check_dimension(n)
    if f.n != n:
        raise JetShapeError(f"Expected a field of {n} variables, got {f.n}.")
    return n


def _all_axes(n: int) -> Tuple[int, ...]:
    return (1,) * n


def _block_index(n: int, block: Sequence[int]) -> Tuple[int, ...]:
    return tuple(1 if axis in block else 0 for axis in range(n))


def _is_finite(value) -> bool:
    return math.isfinite(float(value))


@dataclass(frozen=True)
class DAlembertProblem:
    """The equation ``(d'A)_n`` in one of its two forms."""

    n: int
    form: str = LOG_FORM

    def __post_init__(self):
        _check_dimension(self.n)
        if self.form not in (LOG_FORM, POLYNOMIAL_FORM):
            raise ValueError(f"Unknown form '{self.form}'.")
        if self.form == POLYNOMIAL_FORM and self.n > POLYNOMIAL_FORM_MAX_N:
            raise UnsupportedDimension(
                f"The polynomial form is only expanded up to n = {POLYNOMIAL_FORM_MAX_N}."
            )

    def residual(self, f: Field, point: Sequence[float]):
        """The residual of `f` at `point` in this problem's form."""
        if self.form == LOG_FORM:
            return residual_log(f, point, self.n)
        return residual_poly(f, point, self.n)


@dataclass(frozen=True)
class ProductSolution:
    """A solution ``f = f_1 ... f_n`` with factor ``i`` independent of ``x^i``.

    Factors whose independence can be decided structurally (expression
    fields, embedded fields and combinations of them) are checked on
    construction. For other factors use `check_independence`.
    """

    factors: Tuple[Field, ...]

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        n = len(factors)
        _check_dimension(n)
        for i, factor in enumerate(factors):
            if factor.n != n:
                raise JetShapeError(
                    f"Factor {i} has {factor.n} variables, expected {n}."
                )
            if factor.depends_on(i):
                raise ValueError(f"Factor {i} depends on variable {i}.")

    @property
    def n(self) -> int:
        """Number of variables."""
        return len(self.factors)

    @property
    def field(self) -> ProductField:
        """The assembled product."""
        return ProductField(self.factors)

    def check_independence(self, point: Sequence[float], order: int = 2) -> bool:
        """Whether factor ``i`` has no ``x^i`` terms in its jet at `point`."""
        for i, factor in enumerate(self.factors):
            jet = jet_eval(factor, point, order)
            if any(alpha[i] > 0 and value != 0 for alpha, value in jet.coeffs.items()):
                return False
        return True


@dataclass(frozen=True)
class PolynomialTerm:
    """One term ``coefficient * u^power * prod u_B`` of the polynomial form."""

    coefficient: int
    power: int
    blocks: Tuple[Tuple[int, ...], ...]

    def evaluate(self, jet: Jet):
        """Value of the term on the derivatives stored in `jet`."""
        value = self.coefficient * jet.value**self.power
        for block in self.blocks:
            value = value * extract_derivative(jet, _block_index(jet.n, block))
        return value

    def render(self, variables: Sequence[str]) -> str:
        """The term without its sign, e.g. ``2*u_x*u_y*u_z``."""
        factors = [
            "u_" + "".join(variables[axis] for axis in block) for block in self.blocks
        ]
        if self.power == 1:
            factors.append("u")
        elif self.power > 1:
            factors.append(f"u^{self.power}")
        magnitude = abs(self.coefficient)
        if magnitude != 1:
            factors.insert(0, str(magnitude))
        return "*".join(factors)


def _set_partitions(elements: Tuple[int, ...]) -> Iterator[List[Tuple[int, ...]]]:
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for partition in _set_partitions(rest):
        yield [(first,)] + partition
        for k, block in enumerate(partition):
            yield partition[:k] + [(first,) + block] + partition[k + 1 :]


@lru_cache(maxsize=None)
def polynomial_form(n: int) -> Tuple[PolynomialTerm, ...]:
    """The terms of ``F_n = f^n d^n log f / dx^1 ... dx^n``.

    Terms are ordered by the number of blocks, so the leading term
    ``u_{1...n} u^(n-1)`` comes first.

    Raises
    ------
    UnsupportedDimension
        For n above `POLYNOMIAL_FORM_MAX_N`.
    """
    _check_dimension(n)
    if n > POLYNOMIAL_FORM_MAX_N:
        raise UnsupportedDimension(
            f"The polynomial form is only expanded up to n = {POLYNOMIAL_FORM_MAX_N}."
        )
    terms = []
    for partition in _set_partitions(tuple(range(n))):
        k = len(partition)
        blocks = tuple(sorted((tuple(sorted(b)) for b in partition), key=lambda b: (-len(b), b)))
        terms.append(
            PolynomialTerm(
                coefficient=(-1) ** (k - 1) * math.factorial(k - 1),
                power=n - k,
                blocks=blocks,
            )
        )
    terms.sort(key=lambda t: (len(t.blocks), [(-len(b), b) for b in t.blocks]))
    return tuple(terms)


def format_polynomial(n: int, variables: Optional[Sequence[str]] = None) -> str:
    """Printable form of `polynomial_form`, e.g. ``u_xy*u - u_x*u_y``."""
    variables = variables or default_variables(n)
    rendered = ""
    for term in polynomial_form(n):
        text = term.render(variables)
        if not rendered:
            rendered = text if term.coefficient > 0 else f"-{text}"
        else:
            rendered += f" {'+' if term.coefficient > 0 else '-'} {text}"
    return rendered


def residual_log(f: Field, point: Sequence[float], n: Optional[int] = None) -> float:
    """The log-form residual ``d^n log f / dx^1 ... dx^n`` at `point`.

    Raises
    ------
    OutsideRegularLocus
        If ``f(point) <= 0``.
    NonFiniteError
        If the derivative isn't finite.
    """
    n = _check_field(f, n)
    jet = jet_eval(f, point, n)
    if not jet.value > 0:
        raise OutsideRegularLocus(
            f"The field is not positive at {tuple(point)} (value {jet.value})."
        )
    value = extract_derivative(jet_log(jet), _all_axes(n))
    if not _is_finite(value):
        raise NonFiniteError(f"Non-finite log-form residual at {tuple(point)}.")
    return float(value)


def residual_poly(f: Field, point: Sequence[float], n: Optional[int] = None):
    """The polynomial residual ``F_n(D^n f(point))``.

    Positivity is not required. With `fractions.Fraction` coordinates
    and a field built from rational operations the result is exact.

    Raises
    ------
    UnsupportedDimension
        For n above `POLYNOMIAL_FORM_MAX_N`.
    NonFiniteError
        If a derivative isn't finite.
    """
    n = _check_field(f, n)
    terms = polynomial_form(n)
    jet = jet_eval(f, point, n)
    if not jet.is_finite():
        raise NonFiniteError(f"Non-finite derivatives at {tuple(point)}.")
    value = sum(term.evaluate(jet) for term in terms)
    if not _is_finite(value):
        raise NonFiniteError(f"Non-finite polynomial residual at {tuple(point)}.")
    return value


def symbol_dimension(n: int) -> int:
    """Dimension ``(2n-1)! / (n! (n-1)!) - 1`` of the symbol of ``(d'A)_n``.

    Raises
    ------
    DimensionOverflow
        If the value doesn't fit a signed 64-bit integer.
    """
    _check_dimension(n)
    value = math.comb(2 * n - 1, n) - 1
    if value > MAX_DIMENSION:
        raise DimensionOverflow(f"The symbol dimension for n = {n} overflows.")
    return value


def equation_dimension(n: int) -> int:
    """Dimension ``n + (2n)! / (n!)^2 - 1`` of ``(d'A)_n``.

    Raises
    ------
    DimensionOverflow
        If the value doesn't fit a signed 64-bit integer.
    """
    _check_dimension(n)
    value = n + math.comb(2 * n, n) - 1
    if value > MAX_DIMENSION:
        raise DimensionOverflow(f"The equation dimension for n = {n} overflows.")
    return value


@dataclass(frozen=True)
class WhitneyCheck:
    dim_equation: int
    required: int
    embeddable: bool


def whitney_check(n: int) -> WhitneyCheck:
    """Whether a Cauchy (n-1)-manifold embeds in ``(d'A)_n`` by Whitney."""
    dim_equation = equation_dimension(n)
    required = 2 * (n - 1) + 1
    return WhitneyCheck(dim_equation, required, dim_equation >= required)


def prolongation_residuals_2d(
    f: Field, point: Sequence[float]
) -> Tuple[float, float, float]:
    """The residuals of ``(d'A)_2`` and of its first prolongation.

    ``r0 = f_xy f - f_x f_y``, ``r1 = f_xxy f - f_xx f_y`` and
    ``r2 = f_xyy f - f_yy f_x``.
    """
    _check_field(f, 2)
    jet = jet_eval(f, point, 3)
    if not jet.is_finite():
        raise NonFiniteError(f"Non-finite derivatives at {tuple(point)}.")

    def d(i, j):
        return extract_derivative(jet, (i, j))

    u = jet.value
    r0 = d(1, 1) * u - d(1, 0) * d(0, 1)
    r1 = d(2, 1) * u - d(2, 0) * d(0, 1)
    r2 = d(1, 2) * u - d(0, 2) * d(1, 0)
    return r0, r1, r2


def log_prolongation_2d(f: Field, point: Sequence[float]) -> Tuple[float, float]:
    """``(d_x (d_x d_y log f), d_y (d_x d_y log f))`` at `point`.

    Both vanish on solutions of ``(d'A)_2``. Multiplied by ``f^3`` they
    equal ``r1 f - 2 r0 f_x`` and ``r2 f - 2 r0 f_y``.

    Raises
    ------
    OutsideRegularLocus
        If ``f(point) <= 0``.
    """
    _check_field(f, 2)
    jet = jet_eval(f, point, 3)
    if not jet.value > 0:
        raise OutsideRegularLocus(f"The field is not positive at {tuple(point)}.")
    log_jet = jet_log(jet)
    return (
        float(extract_derivative(log_jet, (2, 1))),
        float(extract_derivative(log_jet, (1, 2))),
    )


@dataclass(frozen=True)
class FunctionalStability:
    formally_integrable: bool
    functionally_stable: bool
    finite_order_symbol_dimension: int
    infinite_prolongation_symbol_dimension: int
    stabilizable: bool


def functional_stability(n: int) -> FunctionalStability:
    """Stability properties of ``(d'A)_n``.

    The equation is formally and completely integrable. Its symbol at
    finite order is non-zero, while its infinite prolongation has zero
    symbol, so the infinite prolongation is functionally stable and
    ``(d'A)_n`` is stabilizable.
    """
    return FunctionalStability(
        formally_integrable=True,
        functionally_stable=True,
        finite_order_symbol_dimension=symbol_dimension(n),
        infinite_prolongation_symbol_dimension=0,
        stabilizable=True,
    )


def admits_exotic_cauchy_data(n: int) -> bool:
    """Whether Cauchy manifolds of ``(d'A)_n`` over R^n can be exotic spheres.

    Exotic spheres exist from dimension 7, so ``n - 1 >= 7``.
    """
    _check_dimension(n)
    return n >= 8


# Solution verification

OK = "ok"
OUTSIDE = "outside-C_n"
FAIL = "fail"


@dataclass(frozen=True)
class PointResidual:
    """Residuals of a candidate solution at one point."""

    point: Tuple[float, ...]
    value: float
    residual_log: Optional[float]
    residual_poly: Optional[float]
    status: str


@dataclass(frozen=True)
class SolutionVerification:
    """Per-point residuals of a candidate solution and the gate verdict."""

    n: int
    tolerance: float
    points: Tuple[PointResidual, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        """Whether every point is within tolerance."""
        return all(p.status != FAIL for p in self.points)

    @property
    def max_residual_log(self) -> Optional[float]:
        """Largest absolute log-form residual, if any was evaluated."""
        values = [abs(p.residual_log) for p in self.points if p.residual_log is not None]
        return max(values, default=None)

    @property
    def max_residual_poly(self) -> Optional[float]:
        """Largest absolute polynomial residual, if any was evaluated."""
        values = [
            abs(float(p.residual_poly)) for p in self.points if p.residual_poly is not None
        ]
        return max(values, default=None)


def verify_solution(
    f: Field,
    points: Sequence[Sequence[float]],
    tolerance: float = DEFAULT_RESIDUAL_TOLERANCE,
) -> SolutionVerification:
    """Evaluate the residual gate of ``(d'A)_n`` at every point.

    A point passes when ``|residual_log| < tolerance`` and, for
    n <= `POLYNOMIAL_FORM_MAX_N`, ``|residual_poly| < tolerance *
    max(1, |f|^n)``. Points where ``f <= 0`` are reported as outside
    ``C_n``; they pass on the polynomial residual alone, and fail when
    it isn't available.
    """
    n = f.n
    _check_dimension(n)
    with_poly = n <= POLYNOMIAL_FORM_MAX_N
    records = []
    for point in points:
        point = tuple(float(c) for c in point)
        value = f(point)
        log_value = None
        poly_value = None
        if value > 0:
            log_value = residual_log(f, point, n)
        if with_poly:
            poly_value = float(residual_poly(f, point, n))

        poly_ok = poly_value is None or abs(poly_value) < tolerance * max(
            1.0, abs(value) ** n
        )
        if log_value is None:
            status = OUTSIDE if with_poly and poly_ok else FAIL
        else:
            status = OK if abs(log_value) < tolerance and poly_ok else FAIL
        if status != OK:
            logger.debug("Point %s: %s", point, status)
        records.append(PointResidual(point, value, log_value, poly_value, status))
    return SolutionVerification(n, tolerance, tuple(records))
