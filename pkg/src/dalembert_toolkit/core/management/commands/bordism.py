"""Command computing integral bordism groups of the n-d'Alembert equation."""
import argparse

from core import models
from core.serializers import BordismInputSerializer, BordismReportSerializer
from django.conf import settings

from ._base import Outcome, ReportCommand


class Command(ReportCommand):
    """
    Compute the integral bordism group of ``(d'A)_n`` over a manifold and
    classify the equation.
    """

    help = (
        "Computes the integral bordism group of degree p of (d'A)_n over a "
        "manifold given by a preset or by its Z2-Betti numbers, the singular "
        "bordism group under an admissibility hypothesis and the crystal "
        "classification. The crystal obstruction is assumed to vanish unless "
        "--no-obstruction_zero is given or the input sets obstruction_zero "
        "to false. Presets: " + ", ".join(sorted(models.PRESETS)) + "."
    )
    command_name = "bordism"
    input_serializer_class = BordismInputSerializer
    input_options = ("preset", "p", "n", "hypothesis", "obstruction_zero", "known_group")
    csv_supported = False

    # docstr-coverage: inherited
    def add_input_arguments(self, parser):
        parser.add_argument("--preset", type=str, choices=sorted(models.PRESETS))
        parser.add_argument("--p", type=int, help="Degree of the bordism group.")
        parser.add_argument(
            "--n", type=int, help="Dimension of the problem. Defaults to the preset's."
        )
        parser.add_argument("--hypothesis", type=str, choices=models.HYPOTHESES)
        parser.add_argument(
            "--obstruction_zero",
            action=argparse.BooleanOptionalAction,
            help="Whether the crystal obstruction vanishes. Defaults to true.",
        )
        parser.add_argument(
            "--known_group",
            type=str,
            choices=sorted(models.CRYSTAL_GROUPS),
            help="Label of a known crystal group instance.",
        )

    def coefficients(self, params, context) -> models.BordismCoefficients:
        """Coefficient table from the input, the run config or the settings."""
        ranks = (
            params.get("coefficients")
            or context["coefficients"]
            or settings.BORDISM_COEFFICIENTS
        )
        return models.BordismCoefficients(tuple(ranks))

    # docstr-coverage: inherited
    def echo(self, params):
        params = {key: value for key, value in params.items() if key != "homology"}
        return super().echo(params)

    # docstr-coverage: inherited
    def compute(self, params, context):
        n, p = params["n"], params["p"]
        homology = params["homology"]
        hypothesis = params["hypothesis"]
        coeffs = self.coefficients(params, context)

        group = models.integral_bordism(p, homology, coeffs, n)
        singular = models.apply_admissibility(group, hypothesis)
        classification = models.classify(
            n, singular, params["obstruction_zero"], params.get("known_group")
        )
        attractor = models.attractor_verdict(hypothesis, n) if n == 8 else None
        report = {
            "manifold": homology.name,
            "n": n,
            "p": p,
            "homology": homology.z2_ranks,
            "coefficients": coeffs.z2_ranks,
            "group": group,
            "hypothesis": hypothesis,
            "singular_group": singular,
            "classification": classification,
            "attractor": attractor,
        }
        return Outcome(BordismReportSerializer(report).data)
