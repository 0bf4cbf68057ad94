"""Characteristics of the 2-d'Alembert equation.

Coordinates on the second order jet space are ordered
``(x, y, u, u_x, u_y, u_xx, u_xy, u_yy)``. The equation admits the two
characteristic strips

    zeta1 = u (d_y + u_y d_u + u_xy d_ux + u_yy d_uy)
            + u_xx u_y d_uxx + u_yy u_x d_uxy

and ``zeta2``, its image under the exchange of x and y. They generate
the sub-equations ``{u_xx = 0, u u_xy - u_x u_y = 0}`` and
``{u_yy = 0, u u_xy - u_x u_y = 0}``.
"""
import logging
import math
import warnings
from dataclasses import astuple, dataclass
from enum import Enum
from typing import Sequence, Tuple

import numpy as np

from .exceptions import JetShapeError
from .fields import AxisField, CallableField, ExpressionField, Field, ProductField, jet_eval
from .jets import extract_derivative

__all__ = (
    "DEFAULT_FLOW_STEP",
    "DEFAULT_BLOW_UP_BOUND",
    "StripId",
    "JetPoint2",
    "ClosedFormSolution",
    "Trajectory",
    "strip_vector",
    "subequation_residuals",
    "integrate_characteristic_flow",
    "closed_form_field",
    "exponential_profile",
)

logger = logging.getLogger(__name__)

DEFAULT_FLOW_STEP = 1e-3
DEFAULT_BLOW_UP_BOUND = 1e12


class StripId(Enum):
    ZETA1 = "zeta1"
    ZETA2 = "zeta2"


@dataclass(frozen=True)
class JetPoint2:
    """A point of the second order jet space over R^2."""

    x: float
    y: float
    u: float
    u_x: float
    u_y: float
    u_xx: float
    u_xy: float
    u_yy: float

    @classmethod
    def from_field(cls, f: Field, point: Sequence[float]) -> "JetPoint2":
        """The 2-jet of `f` at `point`."""
        if f.n != 2:
            raise JetShapeError("Jet points are only defined for fields of 2 variables.")
        jet = jet_eval(f, point, 2)
        d = lambda i, j: float(extract_derivative(jet, (i, j)))  # noqa: E731
        return cls(
            float(point[0]),
            float(point[1]),
            float(jet.value),
            d(1, 0),
            d(0, 1),
            d(2, 0),
            d(1, 1),
            d(0, 2),
        )

    def swapped(self) -> "JetPoint2":
        """The same point with the roles of x and y exchanged."""
        return JetPoint2(
            self.y, self.x, self.u, self.u_y, self.u_x, self.u_yy, self.u_xy, self.u_xx
        )

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)


def _swap_components(v: np.ndarray) -> np.ndarray:
    # (x, y, u, u_x, u_y, u_xx, u_xy, u_yy) -> exchange x and y
    return v[[1, 0, 2, 4, 3, 7, 6, 5]]


def _zeta1(p: JetPoint2) -> np.ndarray:
    return np.array(
        [
            0.0,
            p.u,
            p.u * p.u_y,
            p.u * p.u_xy,
            p.u * p.u_yy,
            p.u_xx * p.u_y,
            p.u_yy * p.u_x,
            0.0,
        ]
    )


def strip_vector(strip: StripId, p: JetPoint2) -> np.ndarray:
    """Components of the characteristic strip `strip` at `p`."""
    strip = StripId(strip)
    if strip is StripId.ZETA1:
        return _zeta1(p)
    return _swap_components(_zeta1(p.swapped()))


def subequation_residuals(i: int, p: JetPoint2) -> Tuple[float, float]:
    """Residuals of the sub-equation generated by strip `i` (1 or 2)."""
    separability = p.u * p.u_xy - p.u_x * p.u_y
    if i == 1:
        return p.u_xx, separability
    if i == 2:
        return p.u_yy, separability
    raise ValueError(f"There are only two sub-equations, got {i}.")


@dataclass(frozen=True)
class ClosedFormSolution:
    """The solution ``u(x, y) = (beta/2 y^2 + alpha y + 1) h(x)``."""

    alpha: float
    beta: float
    h: Field

    def __post_init__(self):
        if self.h.n != 1:
            raise JetShapeError("The profile h must be a field of one variable.")

    def profile(self, y):
        """``beta/2 y^2 + alpha y + 1``; works on numbers and jets."""
        return self.beta / 2 * y * y + self.alpha * y + 1

    def profile_derivative(self, y: float) -> float:
        return self.beta * y + self.alpha

    def u(self, x: float, y: float) -> float:
        return self.profile(y) * self.h((x,))

    def u_y(self, x: float, y: float) -> float:
        return self.profile_derivative(y) * self.h((x,))


def exponential_profile(gamma: float) -> ExpressionField:
    """The profile ``h(x) = exp(gamma x)``."""
    return ExpressionField(f"exp(({gamma!r}) * x)", variables=("x",))


def closed_form_field(sol: ClosedFormSolution) -> Field:
    """The closed form solution as a field of (x, y)."""
    profile = CallableField(sol.profile, n=1)
    return ProductField([AxisField(sol.h, 0, 2), AxisField(profile, 1, 2)])


@dataclass(frozen=True)
class Trajectory:
    """Samples of a characteristic trajectory.

    `states` has one row ``(x, y, u)`` per entry of `times`. When
    `blown_up` is set the trajectory stops at the last finite state
    within the bound.
    """

    times: np.ndarray
    states: np.ndarray
    blown_up: bool = False

    def rows(self):
        """``(t, x, y, u)`` rows."""
        for t, (x, y, u) in zip(self.times, self.states):
            yield float(t), float(x), float(y), float(u)


# Classical 4th order Butcher tableau
_RK4_STAGES = {
    0: [1 / 2],
    1: [0.0, 1 / 2],
    2: [0.0, 0.0, 1.0],
    3: [1 / 6, 2 / 6, 2 / 6, 1 / 6],
}


def _rk4_step(rhs, state: np.ndarray, dt: float) -> np.ndarray:
    slopes = [rhs(state)]
    for stage in range(3):
        weights = _RK4_STAGES[stage]
        increment = sum(w * k for w, k in zip(weights, slopes))
        slopes.append(rhs(state + dt * increment))
    weights = _RK4_STAGES[3]
    return state + dt * sum(w * k for w, k in zip(weights, slopes))


def integrate_characteristic_flow(
    u0: ClosedFormSolution,
    x0: float,
    y0: float,
    t_end: float,
    dt: float = DEFAULT_FLOW_STEP,
    blow_up_bound: float = DEFAULT_BLOW_UP_BOUND,
) -> Trajectory:
    """Integrate ``x' = 0, y' = u, u' = u u_y`` from ``(x0, y0, u0(x0, y0))``.

    ``u_y`` is read from the closed form along the trajectory. The
    integration uses fixed RK4 steps of size `dt`; the last step is
    shortened to land on `t_end`.
    """
    if not dt > 0:
        raise ValueError(f"The step must be positive, got {dt}.")
    if t_end < 0:
        raise ValueError(f"The end time can't be negative, got {t_end}.")

    # x is constant along the flow, so h is evaluated once
    h_x0 = u0.h((x0,))

    def rhs(state):
        _, y, u = state
        return np.array([0.0, u, u * u0.profile_derivative(y) * h_x0])

    steps = math.ceil(t_end / dt - 1e-9) if t_end > 0 else 0
    times = [0.0]
    states = [np.array([x0, y0, u0.profile(y0) * h_x0], dtype=float)]
    blown_up = False
    for step in range(steps):
        t = times[-1]
        h = min(dt, t_end - t)
        state = _rk4_step(rhs, states[-1], h)
        if not np.all(np.isfinite(state)) or np.max(np.abs(state)) > blow_up_bound:
            blown_up = True
            warnings.warn(
                f"Characteristic from ({x0}, {y0}) blew up at t = {t + h:g}; "
                "trajectory truncated."
            )
            break
        # restore exactness of the frozen coordinate
        state[0] = x0
        times.append(t_end if step == steps - 1 else (step + 1) * dt)
        states.append(state)

    logger.debug("Integrated %d steps from (%s, %s)", len(times) - 1, x0, y0)
    return Trajectory(np.array(times), np.vstack(states), blown_up)
