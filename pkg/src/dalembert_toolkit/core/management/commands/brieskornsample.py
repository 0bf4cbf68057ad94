"""Command sampling points of Brieskorn exotic 7-spheres."""
from core import models
from core.serializers import BrieskornInputSerializer, BrieskornReportSerializer
from django.core.management.base import CommandError

from ._base import VERDICT_FAILED, Outcome, ReportCommand

REAL_COLUMNS = [f"{part}_z{j}" for j in range(1, 6) for part in ("re", "im")]


class Command(ReportCommand):
    """Project random points onto the Brieskorn sphere of `kappa`."""

    help = (
        "Projects random unit vectors of C^5 onto the intersection of "
        "z1^2 + z2^2 + z3^2 + z4^3 + z5^(6 kappa - 1) = 0 with the unit sphere by "
        "Gauss-Newton steps and reports the residuals and constraint Jacobian "
        "ranks. Fails when the Jacobian is rank deficient somewhere or too few "
        "projections converge."
    )
    command_name = "brieskorn-sample"
    input_serializer_class = BrieskornInputSerializer
    input_options = ("kappa", "count")

    # docstr-coverage: inherited
    def add_input_arguments(self, parser):
        parser.add_argument(
            "--kappa", type=int, help=f"Label of the sphere, 1..{models.THETA7_ORDER}."
        )
        parser.add_argument("--count", type=int, help="Number of samples.")

    # docstr-coverage: inherited
    def compute(self, params, context):
        tolerances = context["tolerances"]
        try:
            sample = models.sample_sigma(
                params["kappa"],
                params["count"],
                seed=context["seed"],
                tolerance=tolerances["projection"],
                max_iterations=params["max_iterations"],
                rank_threshold=tolerances["rank"],
            )
        except models.SamplingError as e:
            raise CommandError(str(e), returncode=VERDICT_FAILED)

        payload = BrieskornReportSerializer(sample).data
        header = [*REAL_COLUMNS, "residual_polynomial", "residual_sphere", "rank"]
        rows = (
            [*r.point.as_real().tolist(), *r.residuals, r.rank] for r in sample.records
        )
        return Outcome(payload, sample.jacobian.all_full_rank, header, rows)
