"""Conservation laws of the n-d'Alembert equation.

The (n-1)-forms

    omega = sum_i omega_i dx^0 ^ ... ^ (dx^i omitted) ^ ... ^ dx^(n-1)

where ``omega_i`` depends only on the coordinates other than ``x^i`` and
on the invariants

    I_{alpha,i} = d^alpha (d_0 ... (d_i omitted) ... d_(n-1) log f),
    alpha_i = 0,

are closed on every solution f. Indeed ``d omega`` has the single
coefficient ``sum_i (-1)^i d_i omega_i``, and since ``omega_i`` only
reaches ``x^i`` through the invariants,

    d_i omega_i = sum_alpha (d omega_i / d I_{alpha,i}) d^alpha (d_0 ... d_(n-1) log f),

which vanishes when ``d_0 ... d_(n-1) log f = 0``.

Axes are numbered from 0. Component expressions use the coordinate
names of `default_variables` and the invariant names given by
`invariant_name`, e.g. ``I0_0_1`` for ``d_y d_y log f`` when n = 2.
"""
import logging
import math
import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from util import gauss_legendre_panels

from .dalembert import DEFAULT_RESIDUAL_TOLERANCE, residual_log
from .exceptions import (
    ExpressionSyntaxError,
    JetShapeError,
    LoopNotClosed,
    NonFiniteError,
    NotASolution,
    OutsideRegularLocus,
)
from .expressions import Node, parse_expression
from .fields import Field, default_variables, jet_eval
from .jets import Jet, MultiIndex, extract_derivative, jet_log, unit_index

__all__ = (
    "DEFAULT_MAX_ALPHA_ORDER",
    "LOOP_CLOSURE_TOLERANCE",
    "ConservationForm",
    "SolutionSampleSet",
    "invariant_name",
    "invariant_I",
    "component_value",
    "exterior_derivative_coefficient",
    "exterior_derivative_values",
    "exterior_derivative_residual",
    "loop_integral",
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_ALPHA_ORDER = 2
LOOP_CLOSURE_TOLERANCE = 1e-12
LOOP_POINTS_PER_SEGMENT = 32

_INVARIANT = re.compile(r"I(\d+)((?:_\d+)+)")


def invariant_name(i: int, alpha: Sequence[int]) -> str:
    """Identifier of ``I_{alpha,i}`` in component expressions."""
    return f"I{i}_" + "_".join(str(a) for a in alpha)


def _parse_invariant(name: str):
    match = _INVARIANT.fullmatch(name)
    if match is None:
        return None
    axis = int(match.group(1))
    alpha = tuple(int(a) for a in match.group(2).split("_")[1:])
    return axis, alpha


def _invariant_index(n: int, i: int, alpha: Sequence[int]) -> MultiIndex:
    # d^alpha applied to the mixed derivative along every axis but i
    return tuple(alpha[j] + (0 if j == i else 1) for j in range(n))


def _check_alpha(n: int, i: int, alpha: Sequence[int]) -> Tuple[int, ...]:
    alpha = tuple(alpha)
    if not 0 <= i < n:
        raise JetShapeError(f"Axis {i} out of range for dimension {n}.")
    if len(alpha) != n or any(a < 0 for a in alpha):
        raise JetShapeError(f"{alpha} is not a multi-index of length {n}.")
    if alpha[i] != 0:
        raise ValueError(f"The invariants along axis {i} need alpha[{i}] = 0.")
    return alpha


@dataclass(frozen=True)
class _Component:
    tree: Node
    coordinates: Tuple[Tuple[str, int], ...]
    invariants: Tuple[Tuple[str, MultiIndex], ...]


class ConservationForm:
    """An (n-1)-form built from the invariants ``I_{alpha,i}``."""

    def __init__(
        self,
        n: int,
        components: Sequence,
        max_alpha_order: int = DEFAULT_MAX_ALPHA_ORDER,
    ):
        """An (n-1)-form built from the invariants ``I_{alpha,i}``.

        Parameters
        ----------
        n
            Dimension.
        components
            One expression (string or tree) per axis. Component i may
            use the coordinates other than ``x^i`` and the invariants
            ``I{i}_...`` with ``|alpha| <= max_alpha_order``.
        max_alpha_order
            Cap on ``|alpha|``.

        Raises
        ------
        ExpressionSyntaxError
            If a component can't be parsed or uses an identifier it
            isn't allowed to.
        """
        if n < 2:
            raise ValueError(f"Conservation forms need n >= 2, got {n}.")
        if len(components) != n:
            raise JetShapeError(f"Expected {n} components, got {len(components)}.")
        if max_alpha_order < 0:
            raise ValueError("The alpha order cap can't be negative.")
        self.n = n
        self.max_alpha_order = max_alpha_order
        self.variables = default_variables(n)
        self.sources = tuple(
            c if isinstance(c, str) else str(c) for c in components
        )
        self._components = tuple(
            self._compile(i, component) for i, component in enumerate(components)
        )

    def _compile(self, i: int, component) -> _Component:
        tree = parse_expression(component) if isinstance(component, str) else component
        coordinates = []
        invariants = []
        for name in sorted(tree.identifiers()):
            if name in self.variables:
                axis = self.variables.index(name)
                if axis == i:
                    raise ExpressionSyntaxError(
                        f"Component {i} can't depend on its own coordinate '{name}'."
                    )
                coordinates.append((name, axis))
                continue
            parsed = _parse_invariant(name)
            if parsed is None or parsed[0] != i or len(parsed[1]) != self.n:
                raise ExpressionSyntaxError(
                    f"Unknown identifier '{name}' in component {i}."
                )
            alpha = parsed[1]
            if alpha[i] != 0 or sum(alpha) > self.max_alpha_order:
                raise ExpressionSyntaxError(
                    f"Invariant '{name}' is not allowed in component {i} "
                    f"(alpha[{i}] must be 0 and |alpha| <= {self.max_alpha_order})."
                )
            invariants.append((name, alpha))
        return _Component(tree, tuple(coordinates), tuple(invariants))

    @property
    def jet_order(self) -> int:
        """Order of the log-jet needed to evaluate d omega."""
        used = [sum(a) for c in self._components for _, a in c.invariants]
        return self.n + max(used, default=0)

    def __repr__(self):
        return f"ConservationForm(n={self.n}, components={self.sources})"


class SolutionSampleSet:
    """Sample points of a field that passes the log-form residual gate."""

    def __init__(
        self,
        field: Field,
        points: Sequence[Sequence[float]],
        residual_tol: float = DEFAULT_RESIDUAL_TOLERANCE,
    ):
        """Sample points of a field that passes the log-form residual gate.

        Raises
        ------
        NotASolution
            If some point has ``|residual_log| >= residual_tol``.
        OutsideRegularLocus
            If the field isn't positive at some point.
        """
        self.field = field
        self.points = tuple(tuple(float(c) for c in p) for p in points)
        self.residual_tol = residual_tol
        for point in self.points:
            residual = residual_log(field, point)
            if not abs(residual) < residual_tol:
                raise NotASolution(
                    f"Residual {residual:.3e} at {point} exceeds {residual_tol:g}."
                )

    def __len__(self):
        return len(self.points)


def _log_jet(f: Field, point: Sequence[float], order: int) -> Jet:
    jet = jet_eval(f, point, order)
    if not jet.value > 0:
        raise OutsideRegularLocus(f"The field is not positive at {tuple(point)}.")
    log_jet = jet_log(jet)
    if not log_jet.is_finite():
        raise NonFiniteError(f"Non-finite log derivatives at {tuple(point)}.")
    return log_jet


def invariant_I(f: Field, alpha: Sequence[int], i: int, point: Sequence[float]) -> float:
    """``I_{alpha,i}`` of `f` at `point`.

    Raises
    ------
    OutsideRegularLocus
        If ``f(point) <= 0``.
    """
    alpha = _check_alpha(f.n, i, alpha)
    index = _invariant_index(f.n, i, alpha)
    return float(extract_derivative(_log_jet(f, point, sum(index)), index))


def _inputs(component: _Component, point, log_jet: Jet) -> Dict[str, float]:
    n = log_jet.n
    env = {name: point[axis] for name, axis in component.coordinates}
    for name, alpha in component.invariants:
        i = _parse_invariant(name)[0]
        env[name] = float(extract_derivative(log_jet, _invariant_index(n, i, alpha)))
    return env


def _value(result) -> float:
    value = float(result.value if isinstance(result, Jet) else result)
    if not math.isfinite(value):
        raise NonFiniteError("Non-finite component value.")
    return value


def component_value(
    form: ConservationForm, f: Field, i: int, point: Sequence[float]
) -> float:
    """The value of ``omega_i`` on `f` at `point`."""
    component = form._components[i]
    log_jet = _log_jet(f, point, form.jet_order)
    return _value(component.tree.evaluate(_inputs(component, point, log_jet)))


def _gradient(component: _Component, env: Dict[str, float]) -> Dict[str, float]:
    # Evaluate on first order jets of the inputs to get the partials
    names = sorted(env)
    if not names:
        return {}
    base = tuple(env[name] for name in names)
    jets = {name: Jet.variable(k, base, 1) for k, name in enumerate(names)}
    result = component.tree.evaluate(jets)
    if not isinstance(result, Jet):
        return {name: 0.0 for name in names}
    return {
        name: float(extract_derivative(result, unit_index(len(names), k)))
        for k, name in enumerate(names)
    }


def exterior_derivative_coefficient(
    form: ConservationForm, f: Field, point: Sequence[float]
) -> float:
    """The coefficient of ``d omega`` against ``dx^0 ^ ... ^ dx^(n-1)``.

    Computed as ``sum_i (-1)^i d_i omega_i`` by the chain rule through
    the invariants.
    """
    if f.n != form.n:
        raise JetShapeError(f"Expected a field of {form.n} variables, got {f.n}.")
    point = tuple(point)
    log_jet = _log_jet(f, point, form.jet_order)
    ones = (1,) * form.n
    total = 0.0
    for i, component in enumerate(form._components):
        env = _inputs(component, point, log_jet)
        gradient = _gradient(component, env)
        derivative = 0.0
        for name, alpha in component.invariants:
            index = tuple(o + a for o, a in zip(ones, alpha))
            derivative += gradient[name] * float(extract_derivative(log_jet, index))
        total += (-1) ** i * derivative
    if not math.isfinite(total):
        raise NonFiniteError(f"Non-finite exterior derivative at {point}.")
    return total


def exterior_derivative_values(
    form: ConservationForm, sample: SolutionSampleSet
) -> List[float]:
    """The coefficient of ``d omega`` at every sample point."""
    return [
        exterior_derivative_coefficient(form, sample.field, point)
        for point in sample.points
    ]


def exterior_derivative_residual(
    form: ConservationForm, sample: SolutionSampleSet
) -> float:
    """Largest absolute coefficient of ``d omega`` over the sample."""
    values = exterior_derivative_values(form, sample)
    return max((abs(v) for v in values), default=0.0)


def loop_integral(
    form: ConservationForm,
    f: Field,
    loop: Sequence[Sequence[float]],
    points_per_segment: int = LOOP_POINTS_PER_SEGMENT,
) -> float:
    """The integral of a 1-form along a closed polyline, for n = 2.

    With ``omega = omega_0 dy + omega_1 dx`` each segment is integrated
    by Gauss-Legendre quadrature. A counterclockwise loop gives the
    integral of ``d omega`` over the enclosed region.

    Raises
    ------
    LoopNotClosed
        If the first and last vertices differ by more than
        `LOOP_CLOSURE_TOLERANCE`.
    """
    if form.n != 2:
        raise JetShapeError("Loop integrals are only available for n = 2.")
    vertices = np.asarray(loop, dtype=float)
    if vertices.ndim != 2 or vertices.shape[1] != 2 or len(vertices) == 0:
        raise JetShapeError("A loop is a non-empty list of points in the plane.")
    gap = float(np.max(np.abs(vertices[0] - vertices[-1])))
    if gap > LOOP_CLOSURE_TOLERANCE:
        raise LoopNotClosed(f"The loop endpoints differ by {gap:.3e}.")

    nodes, weights = gauss_legendre_panels(0.0, 1.0, points_per_segment)
    total = 0.0
    for start, end in zip(vertices[:-1], vertices[1:]):
        dx, dy = end - start
        if dx == 0 and dy == 0:
            continue
        for s, w in zip(nodes, weights):
            point = tuple((start + s * (end - start)).tolist())
            total += w * (
                component_value(form, f, 0, point) * dy
                + component_value(form, f, 1, point) * dx
            )
    logger.debug("Loop integral over %d segments: %g", len(vertices) - 1, total)
    return float(total)
