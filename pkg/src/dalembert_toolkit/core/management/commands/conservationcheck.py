"""Command checking a candidate conservation law on a solution."""
from core import models
from core.serializers import (
    ConservationInputSerializer,
    ConservationReportSerializer,
)

from ._base import Outcome, SamplingCommand


class Command(SamplingCommand):
    """Evaluate ``d omega`` of a candidate conservation law on a solution."""

    help = (
        "Evaluates the exterior derivative of the (n-1)-form with the given "
        "components on the solution f at sample points, and for n = 2 optionally "
        "the integral of the form along a closed polyline. Components are "
        "expressions in the coordinates (x, y, z up to n = 3, x1..xn beyond) and "
        "the invariants I<i>_<alpha> = d^alpha d_{not i} log f, e.g. I0_0_0. "
        "Fails when f is not a solution or d omega exceeds the 'conservation' "
        "tolerance."
    )
    command_name = "conservation-check"
    input_serializer_class = ConservationInputSerializer
    input_options = ("n", "components", "f", "sample_count", "low", "high")

    # docstr-coverage: inherited
    def add_input_arguments(self, parser):
        parser.add_argument("--n", type=int, help="Number of variables.")
        parser.add_argument(
            "--components", type=str, nargs="+", help="Expressions of omega_0..omega_n-1."
        )
        parser.add_argument("--f", type=str, help="Expression of the solution.")
        parser.add_argument("--sample_count", type=int)
        parser.add_argument("--low", type=float, help="Lower bound of the box.")
        parser.add_argument("--high", type=float, help="Upper bound of the box.")

    # docstr-coverage: inherited
    def compute(self, params, context):
        tolerances = context["tolerances"]
        n = params["n"]
        form = models.ConservationForm(
            n, params["components"], params["max_alpha_order"]
        )
        f = models.ExpressionField(params["f"], n=n)
        points = self.sample_points(params, n, context["seed"])
        report = {
            "n": n,
            "components": params["components"],
            "f": params["f"],
            "is_solution": True,
            "gate_error": None,
            "d_omega_residual": None,
            "tolerance": tolerances["conservation"],
            "conserved": False,
            "loop_integral": None,
            "loop_tolerance": tolerances["loop"],
            "points": [],
        }
        rows = []
        try:
            sample = models.SolutionSampleSet(f, points, tolerances["residual"])
        except models.NotASolution as e:
            report.update(is_solution=False, gate_error=str(e))
            return Outcome(self.serialize(report), False, self.header(n), rows)

        values = models.exterior_derivative_values(form, sample)
        residual = max((abs(v) for v in values), default=0.0)
        conserved = residual < tolerances["conservation"]
        if "loop" in params:
            loop = models.loop_integral(form, f, params["loop"])
            report["loop_integral"] = loop
            conserved = conserved and abs(loop) < tolerances["loop"]
        report.update(
            d_omega_residual=residual,
            conserved=conserved,
            points=[
                {"point": list(p), "d_omega": v} for p, v in zip(sample.points, values)
            ],
        )
        rows = ([*p, v] for p, v in zip(sample.points, values))
        return Outcome(self.serialize(report), conserved, self.header(n), rows)

    @staticmethod
    def serialize(report):
        return ConservationReportSerializer(report).data

    @staticmethod
    def header(n):
        return [*models.default_variables(n), "d_omega"]
