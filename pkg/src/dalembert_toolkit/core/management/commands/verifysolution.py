"""Command checking a candidate solution of the n-d'Alembert equation."""
from core import models
from core.serializers import (
    VerifySolutionInputSerializer,
    VerifySolutionReportSerializer,
)

from ._base import Outcome, SamplingCommand


class Command(SamplingCommand):
    """Evaluate the residuals of ``(d'A)_n`` on a candidate solution."""

    help = (
        "Evaluates the log-form residual d^n log f / dx1...dxn and, for n <= 4, "
        "the polynomial residual of a candidate solution f at the given points or "
        "at random points of a box. Fails when a residual exceeds the 'residual' "
        "tolerance."
    )
    command_name = "verify-solution"
    input_serializer_class = VerifySolutionInputSerializer
    input_options = ("f", "n", "sample_count", "low", "high")

    # docstr-coverage: inherited
    def add_input_arguments(self, parser):
        parser.add_argument("--f", type=str, help="Expression of the candidate.")
        parser.add_argument(
            "--n",
            type=int,
            help="Number of variables, named x, y, z up to three and x1..xn beyond.",
        )
        parser.add_argument("--sample_count", type=int)
        parser.add_argument("--low", type=float, help="Lower bound of the box.")
        parser.add_argument("--high", type=float, help="Upper bound of the box.")

    # docstr-coverage: inherited
    def compute(self, params, context):
        f = models.ExpressionField(params["f"], variables=params["variables"])
        points = self.sample_points(params, f.n, context["seed"])
        verification = models.verify_solution(
            f, points, context["tolerances"]["residual"]
        )
        payload = VerifySolutionReportSerializer(
            {"f": params["f"], "verification": verification}
        ).data
        header = [*params["variables"], "value", "residual_log", "residual_poly", "status"]
        rows = (
            [*p.point, p.value, p.residual_log, p.residual_poly, p.status]
            for p in verification.points
        )
        return Outcome(payload, verification.passed, header, rows)
