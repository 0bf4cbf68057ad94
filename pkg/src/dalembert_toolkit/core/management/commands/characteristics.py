"""Command integrating characteristic trajectories of closed form solutions."""
import numpy as np
from core import models
from core.serializers import (
    CharacteristicsInputSerializer,
    CharacteristicsReportSerializer,
)
from django.conf import settings

from ._base import Outcome, ReportCommand


class Command(ReportCommand):
    """
    Integrate the characteristic flow of ``u = (beta/2 y^2 + alpha y + 1) h(x)``
    from each start point.
    """

    help = (
        "Integrates x' = 0, y' = u, u' = u u_y with fixed-step RK4 for the closed "
        "form solution u = (beta/2 y^2 + alpha y + 1) h(x) from each start point "
        "(x0, y0). Fails when a trajectory blows up."
    )
    command_name = "characteristics"
    input_serializer_class = CharacteristicsInputSerializer
    input_options = ("alpha", "beta", "h", "t_end", "dt")

    # docstr-coverage: inherited
    def add_input_arguments(self, parser):
        parser.add_argument("--alpha", type=float)
        parser.add_argument("--beta", type=float)
        parser.add_argument("--h", type=str, help="Expression of h in x.")
        parser.add_argument("--t_end", type=float, help="End time of the flow.")
        parser.add_argument("--dt", type=float, help="RK4 step.")

    # docstr-coverage: inherited
    def compute(self, params, context):
        h = models.ExpressionField(params["h"], variables=("x",))
        solution = models.ClosedFormSolution(params["alpha"], params["beta"], h)

        summaries = []
        rows = []
        blown_up = False
        for index, (x0, y0) in enumerate(params["starts"]):
            trajectory = models.integrate_characteristic_flow(
                solution,
                x0,
                y0,
                params["t_end"],
                params["dt"],
                settings.FLOW_BLOW_UP_BOUND,
            )
            blown_up |= trajectory.blown_up
            x, y, u = trajectory.states.T
            closed = np.array([solution.u(a, b) for a, b in zip(x, y)])
            summaries.append(
                {
                    "start": [x0, y0],
                    "steps": len(trajectory.times) - 1,
                    "t_final": float(trajectory.times[-1]),
                    "final_state": trajectory.states[-1].tolist(),
                    "blown_up": trajectory.blown_up,
                    "u_consistency": float(np.max(np.abs(u - closed))),
                }
            )
            rows.extend((index, *row) for row in trajectory.rows())

        payload = CharacteristicsReportSerializer(
            {
                "alpha": params["alpha"],
                "beta": params["beta"],
                "h": params["h"],
                "dt": params["dt"],
                "t_end": params["t_end"],
                "trajectories": summaries,
            }
        ).data
        header = ["trajectory", "t", "x", "y", "u"]
        return Outcome(payload, not blown_up, header, rows)
