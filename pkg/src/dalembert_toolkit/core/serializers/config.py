"""Serializers validating run configs."""
from django.conf import settings
from rest_framework import serializers

from .fields import validate_positive

__all__ = (
    "COMMANDS",
    "FORMATS",
    "TOLERANCE_SETTINGS",
    "RejectUnknownKeysMixin",
    "RunConfigSerializer",
    "default_tolerances",
)

COMMANDS = (
    "verify-solution",
    "characteristics",
    "stability-report",
    "conservation-check",
    "bordism",
    "brieskorn-sample",
    "dims",
)

JSON = "json"
CSV = "csv"
FORMATS = (JSON, CSV)

# Tolerance names accepted in configs and by `--tolerance`, with the
# settings holding their defaults.
TOLERANCE_SETTINGS = {
    "residual": "RESIDUAL_TOLERANCE",
    "decay": "STABILITY_DECAY_FLOOR",
    "self_adjoint": "SELF_ADJOINT_TOLERANCE",
    "conservation": "CONSERVATION_TOLERANCE",
    "loop": "LOOP_TOLERANCE",
    "projection": "PROJECTION_TOLERANCE",
    "rank": "JACOBIAN_RANK_THRESHOLD",
}


def default_tolerances() -> dict:
    """The tolerances configured in the settings."""
    return {name: getattr(settings, attr) for name, attr in TOLERANCE_SETTINGS.items()}


class RejectUnknownKeysMixin:
    """Serializer mixin failing validation on keys without a field."""

    # docstr-coverage: inherited
    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError(
                    {key: ["Unknown key."] for key in unknown}
                )
        return super().to_internal_value(data)


class RunConfigSerializer(RejectUnknownKeysMixin, serializers.Serializer):
    """Serializer for JSON run configs.

    Every key is optional; missing keys fall back to the command line
    flags and then to the settings.
    """

    command = serializers.ChoiceField(choices=COMMANDS, required=False)
    input = serializers.CharField(required=False)
    output = serializers.CharField(required=False)
    format = serializers.ChoiceField(choices=FORMATS, required=False)
    seed = serializers.IntegerField(min_value=0, required=False)
    tolerances = serializers.DictField(
        child=serializers.FloatField(validators=[validate_positive]), required=False
    )
    coefficients = serializers.ListField(
        child=serializers.IntegerField(min_value=0), allow_empty=False, required=False
    )

    def validate_tolerances(self, value):
        unknown = sorted(set(value) - set(TOLERANCE_SETTINGS))
        if unknown:
            raise serializers.ValidationError(
                f"Unknown tolerance(s): {', '.join(unknown)}. "
                f"Expected one of: {', '.join(TOLERANCE_SETTINGS)}."
            )
        return value
