"""Command running the average stability criterion on a perturbation."""
from dataclasses import replace

from core import models
from core.serializers import StabilityInputSerializer, StabilityReportSerializer

from ._base import Outcome, ReportCommand


class Command(ReportCommand):
    """
    Decide average asymptotic stability of a perturbation
    ``xi = [s(y) + r(x)] u`` of a closed form solution.
    """

    help = (
        "Samples the windowed mean square p(t) of the perturbation "
        "xi = [s(y) + r(x)] u of u = (beta/2 y^2 + alpha y + 1) h(x) and its rate, "
        "fits the decay rate and reports the stability verdict, the "
        "self-adjointness defect of d/dt against the test function phi and a "
        "boundedness check."
    )
    command_name = "stability-report"
    input_serializer_class = StabilityInputSerializer
    input_options = ("alpha", "beta", "h", "s", "r", "phi", "L")

    # docstr-coverage: inherited
    def add_input_arguments(self, parser):
        parser.add_argument("--alpha", type=float)
        parser.add_argument("--beta", type=float)
        parser.add_argument("--h", type=str, help="Expression of h in x.")
        parser.add_argument("--s", type=str, help="Expression of s in y.")
        parser.add_argument("--r", type=str, help="Expression of r in x.")
        parser.add_argument("--phi", type=str, help="Test function of (x, y).")
        parser.add_argument("--L", type=float, help="Half-width of the window.")

    # docstr-coverage: inherited
    def compute(self, params, context):
        tolerances = context["tolerances"]
        base = models.ClosedFormSolution(
            params["alpha"],
            params["beta"],
            models.ExpressionField(params["h"], variables=("x",)),
        )
        perturbation = models.Perturbation(
            models.ExpressionField(params["s"], variables=("y",)),
            models.ExpressionField(params["r"], variables=("x",)),
            base,
        )
        phi = models.ExpressionField(params["phi"], variables=("x", "y"))
        window = models.AverageWindow.uniform(
            params["L"],
            params["t_min"],
            params["t_max"],
            params["t_points"],
            params["quadrature_points"],
        )

        report = models.stability_verdict(perturbation, window, tolerances["decay"])
        defect_max = max(
            models.adjoint_defect(perturbation, phi, window, t).pointwise_max
            for t in window.t_grid
        )
        report = replace(
            report,
            defect_max=defect_max,
            self_adjoint=defect_max < tolerances["self_adjoint"],
            bounded=models.boundedness_probe(
                perturbation, params["y_max"], params["L"]
            ),
        )

        rates = dict(report.pdot_samples)
        samples = [{"t": t, "p": p, "pdot": rates.get(t)} for t, p in report.p_samples]
        payload = StabilityReportSerializer(
            {"report": report, "decay_floor": tolerances["decay"], "samples": samples}
        ).data
        rows = ([s["t"], s["p"], s["pdot"]] for s in samples)
        return Outcome(payload, True, ["t", "p", "pdot"], rows)
