"""Tests of the run config serializer."""
import pytest
from core.serializers import (
    TOLERANCE_SETTINGS,
    RunConfigSerializer,
    default_tolerances,
)


class TestRunConfigSerializer:
    """Tests of the RunConfigSerializer class."""

    def test_full_config(self):
        data = {
            "command": "bordism",
            "input": "input.json",
            "output": "report.json",
            "format": "json",
            "seed": 3,
            "tolerances": {"residual": 1e-6, "rank": 1e-9},
            "coefficients": [1, 1, 1],
        }
        serializer = RunConfigSerializer(data=data)

        assert serializer.is_valid(), serializer.errors
        assert serializer.validated_data["tolerances"] == {"residual": 1e-6, "rank": 1e-9}

    def test_empty_config(self):
        assert RunConfigSerializer(data={}).is_valid()

    def test_rejects_unknown_keys(self):
        serializer = RunConfigSerializer(data={"seed": 1, "sead": 2})

        assert not serializer.is_valid()
        assert serializer.errors["sead"] == ["Unknown key."]

    def test_rejects_negative_tolerance(self):
        serializer = RunConfigSerializer(data={"tolerances": {"residual": -1e-9}})

        assert not serializer.is_valid()
        assert "tolerances" in serializer.errors

    def test_rejects_unknown_tolerance(self):
        serializer = RunConfigSerializer(data={"tolerances": {"residul": 1e-9}})

        assert not serializer.is_valid()
        assert "residul" in str(serializer.errors["tolerances"])

    @pytest.mark.parametrize(
        "data",
        [
            {"command": "plot"},
            {"format": "xml"},
            {"seed": -1},
            {"coefficients": []},
            {"coefficients": [1, -1]},
        ],
    )
    def test_invalid_values(self, data):
        assert not RunConfigSerializer(data=data).is_valid()


class TestDefaultTolerances:
    """Tests of the default_tolerances() function."""

    def test_names(self):
        assert set(default_tolerances()) == set(TOLERANCE_SETTINGS)

    def test_read_from_settings(self, settings):
        settings.RESIDUAL_TOLERANCE = 1e-6

        assert default_tolerances()["residual"] == 1e-6
