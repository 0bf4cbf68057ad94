"""Average asymptotic stability of the closed form solutions.

A perturbation of ``u = (beta/2 y^2 + alpha y + 1) h(x)`` is
``xi = [s(y) + r(x)] u``. The second coordinate plays the role of time:
along the characteristic flow ``y' = u``, so the material derivative of
a perturbation is ``d xi / dt = (d_y xi) u``.

The averaging domain at time t is the slice ``{(x, t) : |x| <= L}``,
and

    p(t)  = 1 / (2 * 2L) * int xi(x, t)^2 dx
    p'(t) = 1 / (2L) * int (d xi / dt) xi dx.

A perturbation is average stable when p decays like ``exp(-c t)`` for
some ``c > 0``. The decay rate is fitted by least squares on ``log p``;
the largest ratio ``p'/p`` (the constant of the printed inequality
``p' <= c p``) is reported alongside it.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from util import gauss_legendre_panels

from .characteristics import ClosedFormSolution, closed_form_field
from .exceptions import JetDomainError, JetShapeError, NonFiniteError
from .fields import AxisField, Field, jet_eval
from .jets import extract_derivative

__all__ = (
    "AVERAGE_STABLE",
    "AVERAGE_UNSTABLE",
    "INDETERMINATE",
    "BOUNDED",
    "UNBOUNDED",
    "DEFAULT_DECAY_FLOOR",
    "MIN_QUADRATURE_POINTS",
    "DEFAULT_BOUNDEDNESS_Y_MAX",
    "Perturbation",
    "AverageWindow",
    "StabilityReport",
    "AdjointDefect",
    "xi_eval",
    "linearized_residual",
    "material_derivative",
    "adjoint_defect",
    "operator_defect",
    "average_power",
    "average_power_rate",
    "assess_samples",
    "stability_verdict",
    "boundedness_probe",
)

logger = logging.getLogger(__name__)

AVERAGE_STABLE = "average-stable"
AVERAGE_UNSTABLE = "average-unstable"
INDETERMINATE = "indeterminate"

BOUNDED = "bounded"
UNBOUNDED = "unbounded"

DEFAULT_DECAY_FLOOR = 1e-6
DEFAULT_HALF_WIDTH = 5.0
DEFAULT_T_MIN = 0.1
DEFAULT_T_MAX = 10.0
DEFAULT_T_POINTS = 64
DEFAULT_QUADRATURE_POINTS = 128
MIN_QUADRATURE_POINTS = 16

# Growth factor of max |xi| above which a perturbation counts as unbounded
UNBOUNDED_GROWTH = 1e6
# 2^23 <= 1e7, so linear growth reaches a factor above UNBOUNDED_GROWTH
DEFAULT_BOUNDEDNESS_Y_MAX = 1e7


class Perturbation:
    """The perturbation ``xi = [s(y) + r(x)] u`` of a closed form solution."""

    def __init__(self, s: Field, r: Field, base: ClosedFormSolution):
        """The perturbation ``xi = [s(y) + r(x)] u`` of a closed form solution.

        Parameters
        ----------
        s
            Field of one variable, evaluated at y.
        r
            Field of one variable, evaluated at x.
        base
            The perturbed solution u.
        """
        if s.n != 1 or r.n != 1:
            raise JetShapeError("s and r must be fields of one variable.")
        self.s = s
        self.r = r
        self.base = base
        self.u = closed_form_field(base)
        self.xi = (AxisField(s, 1, 2) + AxisField(r, 0, 2)) * self.u

    def __repr__(self):
        return f"Perturbation(s={self.s!r}, r={self.r!r}, base={self.base!r})"


@dataclass(frozen=True)
class AverageWindow:
    """Slice half-width, sample times and quadrature size."""

    L: float = DEFAULT_HALF_WIDTH
    t_grid: Tuple[float, ...] = tuple(
        np.linspace(DEFAULT_T_MIN, DEFAULT_T_MAX, DEFAULT_T_POINTS).tolist()
    )
    quadrature_points: int = DEFAULT_QUADRATURE_POINTS

    def __post_init__(self):
        object.__setattr__(self, "t_grid", tuple(float(t) for t in self.t_grid))
        if not self.L > 0:
            raise ValueError(f"The half-width must be positive, got {self.L}.")
        if not self.t_grid:
            raise ValueError("The time grid is empty.")
        grid = np.asarray(self.t_grid)
        if not np.all(np.isfinite(grid)) or np.any(np.diff(grid) <= 0):
            raise ValueError("The time grid must be finite and strictly increasing.")
        if self.quadrature_points < MIN_QUADRATURE_POINTS:
            raise ValueError(
                f"At least {MIN_QUADRATURE_POINTS} quadrature points are needed."
            )

    @classmethod
    def uniform(
        cls,
        L: float = DEFAULT_HALF_WIDTH,
        t_min: float = DEFAULT_T_MIN,
        t_max: float = DEFAULT_T_MAX,
        t_points: int = DEFAULT_T_POINTS,
        quadrature_points: int = DEFAULT_QUADRATURE_POINTS,
    ) -> "AverageWindow":
        """A window sampling `t_points` equally spaced times."""
        grid = tuple(np.linspace(t_min, t_max, t_points).tolist())
        return cls(L, grid, quadrature_points)

    def nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        """Quadrature nodes and weights on [-L, L]."""
        return gauss_legendre_panels(-self.L, self.L, self.quadrature_points)


@dataclass(frozen=True)
class StabilityReport:
    p_samples: Tuple[Tuple[float, float], ...]
    pdot_samples: Tuple[Tuple[float, float], ...]
    fitted_rate: float
    tau0: float
    literal_c0: float
    verdict: str
    defect_max: Optional[float] = None
    self_adjoint: Optional[bool] = None
    bounded: Optional[str] = None


@dataclass(frozen=True)
class AdjointDefect:
    """Self-adjointness defect of d/dt on one slice.

    Attributes
    ----------
    pointwise_max
        ``max |d phi/dt - d* phi/dt|`` over the quadrature nodes.
    pairing
        ``int [(d xi/dt) phi - xi (d* phi/dt)] dx``, the boundary term
        ``int d_y(u xi phi) dx``.
    """

    pointwise_max: float
    pairing: float


def _derivatives(field: Field, x: float, y: float, order: int):
    jet = jet_eval(field, (x, y), order)
    if not jet.is_finite():
        raise NonFiniteError(f"Non-finite derivatives at ({x}, {y}).")
    return lambda i, j: float(extract_derivative(jet, (i, j)))


def _check_finite(values: np.ndarray, what: str, t: float) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise NonFiniteError(f"Non-finite {what} on the slice y = {t}.")
    return values


def xi_eval(pert: Perturbation, x: float, y: float) -> float:
    """The perturbation at (x, y)."""
    return pert.xi((x, y))


def linearized_residual(pert: Perturbation, point: Sequence[float]) -> float:
    """``xi_xy u + u_xy xi - xi_x u_y - u_x xi_y`` at `point`.

    This is the linearization of ``u u_xy - u_x u_y`` at u in the
    direction xi; it vanishes on symmetries.
    """
    x, y = point
    xi = _derivatives(pert.xi, x, y, 2)
    u = _derivatives(pert.u, x, y, 2)
    return xi(1, 1) * u(0, 0) + u(1, 1) * xi(0, 0) - xi(1, 0) * u(0, 1) - u(1, 0) * xi(0, 1)


def material_derivative(pert: Perturbation, x: float, y: float) -> float:
    """``d xi / dt = (d_y xi) u`` at (x, y)."""
    xi = _derivatives(pert.xi, x, y, 1)
    return xi(0, 1) * pert.u((x, y))


def operator_defect(pert: Perturbation, phi: Field, x: float, y: float) -> float:
    """``d phi/dt - d* phi/dt`` at (x, y).

    With ``d phi/dt = u phi_y`` and ``d* phi/dt = -d_y(u phi)`` this is
    ``2 u phi_y + u_y phi``.
    """
    u = _derivatives(pert.u, x, y, 1)
    p = _derivatives(phi, x, y, 1)
    forward = u(0, 0) * p(0, 1)
    adjoint = -(u(0, 1) * p(0, 0) + u(0, 0) * p(0, 1))
    return forward - adjoint


def adjoint_defect(
    pert: Perturbation, phi: Field, window: AverageWindow, t: float
) -> AdjointDefect:
    """Pointwise and integrated self-adjointness defects on the slice y = t."""
    if phi.n != 2:
        raise JetShapeError("The test function must be a field of (x, y).")
    nodes, weights = window.nodes()
    pointwise = np.empty_like(nodes)
    pairing = np.empty_like(nodes)
    for k, x in enumerate(nodes):
        xi = _derivatives(pert.xi, x, t, 1)
        u = _derivatives(pert.u, x, t, 1)
        p = _derivatives(phi, x, t, 1)
        pointwise[k] = 2 * u(0, 0) * p(0, 1) + u(0, 1) * p(0, 0)
        # (d xi/dt) phi + xi d_y(u phi)
        pairing[k] = u(0, 0) * xi(0, 1) * p(0, 0) + xi(0, 0) * (
            u(0, 1) * p(0, 0) + u(0, 0) * p(0, 1)
        )
    _check_finite(pointwise, "operator defect", t)
    _check_finite(pairing, "pairing integrand", t)
    return AdjointDefect(float(np.max(np.abs(pointwise))), float(weights @ pairing))


def average_power(pert: Perturbation, window: AverageWindow, t: float) -> float:
    """``p(t) = 1/(4L) int xi(x, t)^2 dx``."""
    nodes, weights = window.nodes()
    values = np.array([pert.xi((x, t)) for x in nodes])
    _check_finite(values, "perturbation", t)
    return float(weights @ values**2) / (4 * window.L)


def average_power_rate(pert: Perturbation, window: AverageWindow, t: float) -> float:
    """``p'(t) = 1/(2L) int (d xi/dt) xi dx``."""
    nodes, weights = window.nodes()
    values = np.empty_like(nodes)
    for k, x in enumerate(nodes):
        xi = _derivatives(pert.xi, x, t, 1)
        values[k] = xi(0, 1) * pert.u((x, t)) * xi(0, 0)
    _check_finite(values, "perturbation rate", t)
    return float(weights @ values) / (2 * window.L)


def assess_samples(
    times: Sequence[float],
    p_values: Sequence[float],
    pdot_values: Optional[Sequence[float]] = None,
    c_min: float = DEFAULT_DECAY_FLOOR,
) -> StabilityReport:
    """Fit the decay rate of sampled ``p(t)`` and decide stability.

    The fitted rate is the least squares slope of ``-log p``. The
    verdict is average stable when it reaches `c_min`, average unstable
    below it, and indeterminate when some sample isn't positive.
    """
    times = np.asarray(times, dtype=float)
    p = np.asarray(p_values, dtype=float)
    pdot = None if pdot_values is None else np.asarray(pdot_values, dtype=float)
    p_samples = tuple(zip(times.tolist(), p.tolist()))
    pdot_samples = () if pdot is None else tuple(zip(times.tolist(), pdot.tolist()))

    if len(times) < 2 or np.any(p <= 0):
        logger.info("Perturbation vanishes on the grid; stability is indeterminate.")
        return StabilityReport(
            p_samples, pdot_samples, 0.0, math.inf, math.nan, INDETERMINATE
        )

    fitted_rate = float(np.polyfit(times, -np.log(p), 1)[0])
    tau0 = 1 / fitted_rate if fitted_rate >= c_min else math.inf
    literal_c0 = float(np.max(pdot / p)) if pdot is not None else math.nan
    verdict = AVERAGE_STABLE if fitted_rate >= c_min else AVERAGE_UNSTABLE
    return StabilityReport(
        p_samples, pdot_samples, fitted_rate, tau0, literal_c0, verdict
    )


def stability_verdict(
    pert: Perturbation,
    window: AverageWindow,
    c_min: float = DEFAULT_DECAY_FLOOR,
) -> StabilityReport:
    """Sample p and p' over the window's time grid and decide stability."""
    times = window.t_grid
    p = [average_power(pert, window, t) for t in times]
    pdot = [average_power_rate(pert, window, t) for t in times]
    return assess_samples(times, p, pdot, c_min)


def boundedness_probe(
    pert: Perturbation,
    y_max: float = DEFAULT_BOUNDEDNESS_Y_MAX,
    L: float = DEFAULT_HALF_WIDTH,
    x_samples: int = 33,
) -> str:
    """Whether ``max_x |xi(x, y)|`` stays bounded as y grows.

    Samples ``y = 1, 2, 4, ...`` up to `y_max`. The perturbation is
    unbounded when, from the first non-zero maximum on, the maxima
    increase at every step and end above `UNBOUNDED_GROWTH` times that
    first non-zero one, or when it overflows. The default `y_max` lets
    linear growth pass the threshold.
    """
    xs = np.linspace(-L, L, x_samples)
    maxima = []
    y = 1.0
    while y <= y_max:
        try:
            values = np.abs([pert.xi((x, y)) for x in xs])
        except JetDomainError as e:
            if isinstance(e.__cause__, OverflowError):
                return UNBOUNDED
            raise
        if not np.all(np.isfinite(values)):
            return UNBOUNDED
        maxima.append(float(np.max(values)))
        y *= 2
    nonzero = [i for i, m in enumerate(maxima) if m > 0]
    if not nonzero:
        return BOUNDED
    tail = maxima[nonzero[0] :]
    if len(tail) < 2:
        return BOUNDED
    increasing = all(b > a for a, b in zip(tail, tail[1:]))
    if increasing and tail[-1] > UNBOUNDED_GROWTH * tail[0]:
        return UNBOUNDED
    return BOUNDED
