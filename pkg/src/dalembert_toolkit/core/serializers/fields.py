"""Custom serializer fields."""
import math

from core.models import ExpressionSyntaxError, parse_expression
from rest_framework import serializers

__all__ = (
    "ExpressionField",
    "InfinityFloatField",
    "PointField",
    "validate_positive",
)


def validate_positive(value):
    """Reject values that are not strictly positive."""
    if not value > 0:
        raise serializers.ValidationError("Ensure this value is greater than 0.")


class ExpressionField(serializers.CharField):
    """
    CharField accepting expression strings.

    The string is kept as is; parsing only checks that it is well
    formed, and that it uses only the allowed identifiers when
    `variables` is given.
    """

    def __init__(self, variables=None, **kwargs):
        """CharField accepting expression strings.

        Parameters
        ----------
        variables: collections.abc.Collection
            Allowed identifiers. Any identifier is accepted if omitted.
        kwargs
        """
        super().__init__(**kwargs)
        self.variables = None if variables is None else frozenset(variables)

    # docstr-coverage: inherited
    def to_internal_value(self, data):
        data = super().to_internal_value(data)
        try:
            tree = parse_expression(data)
        except ExpressionSyntaxError as e:
            raise serializers.ValidationError(str(e))
        if self.variables is not None:
            unknown = tree.identifiers() - self.variables
            if unknown:
                raise serializers.ValidationError(
                    f"Unknown identifier(s): {', '.join(sorted(unknown))}."
                )
        return data


class InfinityFloatField(serializers.FloatField):
    """
    FloatField representing infinities as ``"Infinity"`` and
    ``"-Infinity"`` and NaN as null, so that reports stay strict JSON.
    """

    # docstr-coverage: inherited
    def to_representation(self, value):
        if value is None:
            return None
        value = float(value)
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "Infinity" if value > 0 else "-Infinity"
        return value


class PointField(serializers.ListField):
    """A list of floats with an optional fixed length."""

    child = serializers.FloatField()

    def __init__(self, length=None, **kwargs):
        """A list of floats with an optional fixed length.

        Parameters
        ----------
        length: int
            Required number of coordinates.
        kwargs
        """
        if length is not None:
            kwargs.setdefault("min_length", length)
            kwargs.setdefault("max_length", length)
        super().__init__(**kwargs)
