"""Serializers of the report envelope and the per-command payloads.

Payload serializers read plain dicts or the dataclasses of
`core.models`; the envelope carries the already serialized payload.
"""
from rest_framework import serializers

from .fields import InfinityFloatField

__all__ = (
    "PASS",
    "FAIL",
    "ReportEnvelopeSerializer",
    "DimsReportSerializer",
    "BordismReportSerializer",
    "VerifySolutionReportSerializer",
    "CharacteristicsReportSerializer",
    "StabilityReportSerializer",
    "ConservationReportSerializer",
    "BrieskornReportSerializer",
)

PASS = "pass"
FAIL = "fail"


class ReportEnvelopeSerializer(serializers.Serializer):
    tool_version = serializers.CharField()
    grammar_version = serializers.CharField()
    command = serializers.CharField()
    arguments = serializers.JSONField()
    timestamp = serializers.DateTimeField()
    payload = serializers.JSONField()
    summary = serializers.ChoiceField(choices=(PASS, FAIL))


class FunctionalStabilitySerializer(serializers.Serializer):
    formally_integrable = serializers.BooleanField()
    functionally_stable = serializers.BooleanField()
    finite_order_symbol_dimension = serializers.IntegerField()
    infinite_prolongation_symbol_dimension = serializers.IntegerField()
    stabilizable = serializers.BooleanField()


class DimsReportSerializer(serializers.Serializer):
    """Dimension counts of ``(d'A)_n``."""

    n = serializers.IntegerField()
    equation_dimension = serializers.IntegerField()
    symbol_dimension = serializers.IntegerField()
    whitney = serializers.BooleanField()
    whitney_required = serializers.IntegerField()
    functional_stability = FunctionalStabilitySerializer()
    admits_exotic_cauchy_data = serializers.BooleanField()
    polynomial_form = serializers.CharField(allow_null=True)


class ClassificationSerializer(serializers.Serializer):
    extended_crystal = serializers.BooleanField()
    extended_0_crystal = serializers.BooleanField()
    zero_crystal = serializers.BooleanField()
    crystal_group_label = serializers.CharField(allow_null=True)
    crystal_dimension = serializers.IntegerField(allow_null=True)


class BordismReportSerializer(serializers.Serializer):
    """
    Integral bordism group of a manifold, its singular counterpart
    under the admissibility hypothesis and the crystal classification.

    Groups are rendered as ``"0"`` or ``"Z2^k"``.
    """

    manifold = serializers.CharField()
    n = serializers.IntegerField()
    p = serializers.IntegerField()
    homology = serializers.ListField(child=serializers.IntegerField())
    coefficients = serializers.ListField(child=serializers.IntegerField())
    group = serializers.CharField()
    rank = serializers.IntegerField(source="group.rank")
    hypothesis = serializers.CharField()
    singular_group = serializers.CharField()
    classification = ClassificationSerializer()
    attractor = serializers.CharField(allow_null=True)


class PointResidualSerializer(serializers.Serializer):
    point = serializers.ListField(child=serializers.FloatField())
    value = InfinityFloatField()
    residual_log = InfinityFloatField(allow_null=True)
    residual_poly = InfinityFloatField(allow_null=True)
    status = serializers.CharField()


class VerifySolutionReportSerializer(serializers.Serializer):
    """Reads a `core.models.SolutionVerification` and the checked expression."""

    f = serializers.CharField()
    n = serializers.IntegerField(source="verification.n")
    tolerance = serializers.FloatField(source="verification.tolerance")
    passed = serializers.BooleanField(source="verification.passed")
    max_residual_log = InfinityFloatField(
        source="verification.max_residual_log", allow_null=True
    )
    max_residual_poly = InfinityFloatField(
        source="verification.max_residual_poly", allow_null=True
    )
    points = PointResidualSerializer(source="verification.points", many=True)


class TrajectorySerializer(serializers.Serializer):
    start = serializers.ListField(child=serializers.FloatField())
    steps = serializers.IntegerField()
    t_final = serializers.FloatField()
    final_state = serializers.ListField(child=InfinityFloatField())
    blown_up = serializers.BooleanField()
    u_consistency = InfinityFloatField()


class CharacteristicsReportSerializer(serializers.Serializer):
    """Summaries of the characteristic trajectories of a closed form solution.

    `u_consistency` is the largest deviation of u along a trajectory
    from the closed form evaluated at the trajectory's (x, y).
    """

    alpha = serializers.FloatField()
    beta = serializers.FloatField()
    h = serializers.CharField()
    dt = serializers.FloatField()
    t_end = serializers.FloatField()
    trajectories = TrajectorySerializer(many=True)


class StabilitySampleSerializer(serializers.Serializer):
    t = serializers.FloatField()
    p = InfinityFloatField()
    pdot = InfinityFloatField(allow_null=True)


class StabilityReportSerializer(serializers.Serializer):
    """Reads a `core.models.StabilityReport` and the sampled series."""

    verdict = serializers.CharField(source="report.verdict")
    fitted_rate = InfinityFloatField(source="report.fitted_rate")
    tau0 = InfinityFloatField(source="report.tau0")
    literal_c0 = InfinityFloatField(source="report.literal_c0", allow_null=True)
    defect_max = InfinityFloatField(source="report.defect_max", allow_null=True)
    self_adjoint = serializers.BooleanField(source="report.self_adjoint", allow_null=True)
    bounded = serializers.CharField(source="report.bounded", allow_null=True)
    decay_floor = serializers.FloatField()
    samples = StabilitySampleSerializer(many=True)


class ConservationPointSerializer(serializers.Serializer):
    point = serializers.ListField(child=serializers.FloatField())
    d_omega = InfinityFloatField()


class ConservationReportSerializer(serializers.Serializer):
    """Exterior derivative of a candidate conservation law on a solution.

    When the field fails the residual gate `gate_error` holds the
    reason and no derivative is reported.
    """

    n = serializers.IntegerField()
    components = serializers.ListField(child=serializers.CharField())
    f = serializers.CharField()
    is_solution = serializers.BooleanField()
    gate_error = serializers.CharField(allow_null=True)
    d_omega_residual = InfinityFloatField(allow_null=True)
    tolerance = serializers.FloatField()
    conserved = serializers.BooleanField()
    loop_integral = InfinityFloatField(allow_null=True)
    loop_tolerance = serializers.FloatField()
    points = ConservationPointSerializer(many=True)


class SampleRecordSerializer(serializers.Serializer):
    point = serializers.ListField(child=serializers.FloatField())
    residual_polynomial = serializers.FloatField()
    residual_sphere = serializers.FloatField()
    rank = serializers.IntegerField()
    smallest_singular_value = serializers.FloatField()
    iterations = serializers.IntegerField()

    # docstr-coverage: inherited
    def to_representation(self, instance):
        return {
            "point": instance.point.as_real().tolist(),
            "residual_polynomial": instance.residuals[0],
            "residual_sphere": instance.residuals[1],
            "rank": instance.rank,
            "smallest_singular_value": instance.smallest_singular_value,
            "iterations": instance.iterations,
        }


class JacobianReportSerializer(serializers.Serializer):
    threshold = serializers.FloatField()
    all_full_rank = serializers.BooleanField()
    local_dimension = serializers.IntegerField(allow_null=True)


class BrieskornReportSerializer(serializers.Serializer):
    """Reads a `core.models.SigmaSample`."""

    kappa = serializers.IntegerField()
    seed = serializers.IntegerField(allow_null=True)
    requested = serializers.IntegerField()
    converged = serializers.IntegerField()
    failures = serializers.IntegerField()
    jacobian = JacobianReportSerializer()
    samples = SampleRecordSerializer(source="records", many=True)
