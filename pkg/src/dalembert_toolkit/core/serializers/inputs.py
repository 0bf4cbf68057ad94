"""Serializers validating the inputs of the report commands."""
from core import models
from django.conf import settings
from rest_framework import serializers

from .config import RejectUnknownKeysMixin
from .fields import ExpressionField, PointField, validate_positive

__all__ = (
    "DimsInputSerializer",
    "VerifySolutionInputSerializer",
    "CharacteristicsInputSerializer",
    "StabilityInputSerializer",
    "ConservationInputSerializer",
    "ManifoldSerializer",
    "BordismInputSerializer",
    "BrieskornInputSerializer",
)


class InputSerializer(RejectUnknownKeysMixin, serializers.Serializer):
    """Base class of the command input serializers."""


class SamplePointsMixin(serializers.Serializer):
    """Explicit sample points, or a box to draw them from at random."""

    points = serializers.ListField(child=PointField(), required=False, allow_empty=False)
    sample_count = serializers.IntegerField(
        min_value=1, default=lambda: settings.VERIFY_SAMPLE_COUNT
    )
    low = serializers.FloatField(default=-1.0)
    high = serializers.FloatField(default=1.0)

    def check_sample_points(self, attrs, n):
        """Check the points' dimension and the sampling box."""
        for point in attrs.get("points", ()):
            if len(point) != n:
                raise serializers.ValidationError(
                    {"points": f"Every point needs {n} coordinates."}
                )
        if not attrs["low"] < attrs["high"]:
            raise serializers.ValidationError({"high": "Must be greater than low."})


class DimsInputSerializer(InputSerializer):
    """Input of the `dims` command."""

    n = serializers.IntegerField(min_value=2)


class VerifySolutionInputSerializer(SamplePointsMixin, InputSerializer):
    """Input of the `verify-solution` command."""

    f = ExpressionField()
    n = serializers.IntegerField(min_value=2, required=False)
    variables = serializers.ListField(
        child=serializers.CharField(), min_length=2, required=False
    )

    # docstr-coverage: inherited
    def validate(self, attrs):
        variables = attrs.get("variables")
        if variables is None:
            if "n" not in attrs:
                raise serializers.ValidationError(
                    {"n": "Required when no variables are given."}
                )
            variables = models.default_variables(attrs["n"])
        elif attrs.get("n", len(variables)) != len(variables):
            raise serializers.ValidationError(
                {"variables": "The number of variables must equal n."}
            )
        attrs["variables"] = list(variables)
        attrs["n"] = len(variables)
        try:
            models.ExpressionField(attrs["f"], variables=variables)
        except (models.ExpressionSyntaxError, ValueError) as e:
            raise serializers.ValidationError({"f": str(e)})
        self.check_sample_points(attrs, attrs["n"])
        return attrs


class ClosedFormInputMixin(serializers.Serializer):
    """Parameters of ``u = (beta/2 y^2 + alpha y + 1) h(x)``."""

    alpha = serializers.FloatField(default=0.0)
    beta = serializers.FloatField(default=0.0)
    h = ExpressionField(variables=("x",), default="1")


class CharacteristicsInputSerializer(ClosedFormInputMixin, InputSerializer):
    """Input of the `characteristics` command."""

    starts = serializers.ListField(
        child=PointField(length=2), allow_empty=False, default=lambda: [[0.0, 0.0]]
    )
    t_end = serializers.FloatField(min_value=0, default=1.0)
    dt = serializers.FloatField(
        validators=[validate_positive], default=lambda: settings.FLOW_STEP
    )


class StabilityInputSerializer(ClosedFormInputMixin, InputSerializer):
    """Input of the `stability-report` command."""

    s = ExpressionField(variables=("y",), default="1")
    r = ExpressionField(variables=("x",), default="0")
    phi = ExpressionField(variables=("x", "y"), default="y")
    L = serializers.FloatField(
        validators=[validate_positive],
        default=lambda: settings.STABILITY_WINDOW_HALF_WIDTH,
    )
    t_min = serializers.FloatField(default=lambda: settings.STABILITY_T_MIN)
    t_max = serializers.FloatField(default=lambda: settings.STABILITY_T_MAX)
    t_points = serializers.IntegerField(
        min_value=2, default=lambda: settings.STABILITY_T_POINTS
    )
    quadrature_points = serializers.IntegerField(
        min_value=models.MIN_QUADRATURE_POINTS,
        default=lambda: settings.STABILITY_QUADRATURE_POINTS,
    )
    y_max = serializers.FloatField(
        validators=[validate_positive],
        default=lambda: settings.STABILITY_BOUNDEDNESS_Y_MAX,
    )

    # docstr-coverage: inherited
    def validate(self, attrs):
        if not attrs["t_min"] < attrs["t_max"]:
            raise serializers.ValidationError({"t_max": "Must be greater than t_min."})
        return attrs


class ConservationInputSerializer(SamplePointsMixin, InputSerializer):
    """Input of the `conservation-check` command."""

    n = serializers.IntegerField(min_value=2)
    components = serializers.ListField(child=ExpressionField(), allow_empty=False)
    max_alpha_order = serializers.IntegerField(
        min_value=0, default=lambda: settings.CONSERVATION_ALPHA_ORDER
    )
    f = ExpressionField()
    loop = serializers.ListField(
        child=PointField(length=2), min_length=1, required=False
    )
    low = serializers.FloatField(default=0.1)
    high = serializers.FloatField(default=1.0)

    # docstr-coverage: inherited
    def validate(self, attrs):
        n = attrs["n"]
        if len(attrs["components"]) != n:
            raise serializers.ValidationError(
                {"components": f"Expected {n} components."}
            )
        if "loop" in attrs and n != 2:
            raise serializers.ValidationError(
                {"loop": "Loop integrals are only available for n = 2."}
            )
        try:
            models.ExpressionField(attrs["f"], n=n)
            models.ConservationForm(n, attrs["components"], attrs["max_alpha_order"])
        except models.ExpressionSyntaxError as e:
            raise serializers.ValidationError({"components": str(e)})
        self.check_sample_points(attrs, n)
        return attrs


class ManifoldSerializer(InputSerializer):
    """A manifold given by its Z2-Betti numbers."""

    name = serializers.CharField()
    h = serializers.ListField(
        child=serializers.IntegerField(min_value=0), allow_empty=False
    )

    def validate_h(self, value):
        if value[0] < 1:
            raise serializers.ValidationError("A non-empty manifold has h_0 >= 1.")
        return value


class BordismInputSerializer(InputSerializer):
    """Input of the `bordism` command.

    The manifold is either one of the shipped presets or given
    explicitly together with the dimension n.
    """

    preset = serializers.ChoiceField(choices=sorted(models.PRESETS), required=False)
    manifold = ManifoldSerializer(required=False)
    n = serializers.IntegerField(min_value=2, required=False)
    p = serializers.IntegerField(min_value=0)
    coefficients = serializers.ListField(
        child=serializers.IntegerField(min_value=0), allow_empty=False, required=False
    )
    hypothesis = serializers.ChoiceField(
        choices=models.HYPOTHESES, default=models.NO_HYPOTHESIS
    )
    obstruction_zero = serializers.BooleanField(
        default=True,
        help_text="Whether the crystal obstruction vanishes. Assumed unless set "
        "to false.",
    )
    known_group = serializers.ChoiceField(
        choices=sorted(models.CRYSTAL_GROUPS), required=False
    )

    # docstr-coverage: inherited
    def validate(self, attrs):
        if ("preset" in attrs) == ("manifold" in attrs):
            raise serializers.ValidationError(
                {"preset": "Give either a preset or a manifold."}
            )
        if "preset" in attrs:
            preset = models.PRESETS[attrs["preset"]]
            attrs.setdefault("n", preset.n)
            if preset.known_group is not None:
                attrs.setdefault("known_group", preset.known_group)
            attrs["homology"] = preset.homology
        else:
            if "n" not in attrs:
                raise serializers.ValidationError(
                    {"n": "Required with an explicit manifold."}
                )
            manifold = attrs["manifold"]
            attrs["homology"] = models.HomologyTable(manifold["name"], manifold["h"])
        if not attrs["p"] < attrs["n"]:
            raise serializers.ValidationError(
                {"p": f"The degree must lie in 0..{attrs['n'] - 1}."}
            )
        return attrs


class BrieskornInputSerializer(InputSerializer):
    """Input of the `brieskorn-sample` command."""

    kappa = serializers.IntegerField(
        min_value=1, max_value=models.THETA7_ORDER, default=1
    )
    count = serializers.IntegerField(min_value=1, default=200)
    max_iterations = serializers.IntegerField(
        min_value=1, default=lambda: settings.PROJECTION_MAX_ITERATIONS
    )
