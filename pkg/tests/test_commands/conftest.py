"""Command test fixtures."""
import io
import json
from pathlib import Path

import pytest
from django.core.management import CommandError, call_command

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def run_command():
    """
    Run a management command and return its exit code and standard
    output.
    """

    def run(name, **options):
        out = io.StringIO()
        try:
            call_command(name, stdout=out, **options)
            code = 0
        except CommandError as e:
            code = e.returncode
        return code, out.getvalue()

    return run


@pytest.fixture
def run_report(run_command):
    """Run a command in JSON format and return its exit code and report."""

    def run(name, **options):
        code, output = run_command(name, **options)
        return code, json.loads(output) if output else None

    return run


@pytest.fixture
def write_json(tmp_path):
    """Write an object to a JSON file in a temporary directory."""

    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return write


@pytest.fixture
def golden():
    """Load an expected payload from the golden directory."""

    def load(name):
        with open(GOLDEN_DIR / name) as file:
            return json.load(file)

    return load
