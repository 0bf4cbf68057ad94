"""Tests of the report renderers."""
import json
import math

import pytest
from core.renderers import CSVRenderer, ReportJSONRenderer


class TestReportJSONRenderer:
    """Tests of the ReportJSONRenderer class."""

    def test_indent_and_trailing_newline(self):
        content = ReportJSONRenderer().render({"a": [1, 2]})
        assert content == b'{\n  "a": [\n    1,\n    2\n  ]\n}\n'

    def test_equal_data_renders_equal_bytes(self):
        renderer = ReportJSONRenderer()
        first = renderer.render({"summary": "pass", "payload": {"n": 2}})
        second = renderer.render({"summary": "pass", "payload": {"n": 2}})
        assert first == second
        assert json.loads(first) == {"summary": "pass", "payload": {"n": 2}}

    def test_none(self):
        assert ReportJSONRenderer().render(None) == b""


class TestCSVRenderer:
    """Tests of the CSVRenderer class."""

    def test_header_and_rows(self):
        data = {"header": ["t", "p"], "rows": iter([[0.0, 0.5], [0.1, None]])}
        content = CSVRenderer().render(data)
        assert content == b"t,p\n0.0,0.5\n0.1,\n"

    def test_float_precision(self):
        data = {"header": ["x"], "rows": [[1 / 3]]}
        lines = CSVRenderer().render(data).decode().splitlines()
        assert float(lines[1]) == 1 / 3

    def test_infinity(self):
        data = {"header": ["tau0"], "rows": [[math.inf]]}
        assert CSVRenderer().render(data) == b"tau0\ninf\n"

    def test_none(self):
        assert CSVRenderer().render(None) == b""


class TestStrictJSON:
    """Non-finite floats never reach a JSON report."""

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            ReportJSONRenderer().render({"x": math.nan})
