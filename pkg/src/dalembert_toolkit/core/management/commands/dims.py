"""Command reporting the dimension counts of the n-d'Alembert equation."""
from core import models
from core.serializers import DimsInputSerializer, DimsReportSerializer

from ._base import Outcome, ReportCommand


class Command(ReportCommand):
    """Report the equation and symbol dimensions of ``(d'A)_n``."""

    help = (
        "Reports the dimension of (d'A)_n as a submanifold of the jet space, the "
        "dimension of its symbol, the Whitney embedding check and, for n <= 4, the "
        "polynomial form of the equation."
    )
    command_name = "dims"
    input_serializer_class = DimsInputSerializer
    input_options = ("n",)
    csv_supported = False

    # docstr-coverage: inherited
    def add_input_arguments(self, parser):
        parser.add_argument("--n", type=int, help="Number of independent variables.")

    # docstr-coverage: inherited
    def compute(self, params, context):
        n = params["n"]
        whitney = models.whitney_check(n)
        polynomial = (
            models.format_polynomial(n) if n <= models.POLYNOMIAL_FORM_MAX_N else None
        )
        report = {
            "n": n,
            "equation_dimension": whitney.dim_equation,
            "symbol_dimension": models.symbol_dimension(n),
            "whitney": whitney.embeddable,
            "whitney_required": whitney.required,
            "functional_stability": models.functional_stability(n),
            "admits_exotic_cauchy_data": models.admits_exotic_cauchy_data(n),
            "polynomial_form": polynomial,
        }
        return Outcome(DimsReportSerializer(report).data)
