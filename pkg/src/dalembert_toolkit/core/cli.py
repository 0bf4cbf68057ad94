"""Entry point of the `dalembert` console script.

``dalembert <command> [flags]`` runs one of the report commands with the
toolkit's settings; the process exits with 0 on a passing verdict, 1 on
a failing one and 2 on usage or configuration errors.
"""
import json
import os
import sys
from typing import Optional, Sequence

# Command names mapped to the management command modules implementing them
COMMAND_MODULES = {
    "verify-solution": "verifysolution",
    "characteristics": "characteristics",
    "stability-report": "stabilityreport",
    "conservation-check": "conservationcheck",
    "bordism": "bordism",
    "brieskorn-sample": "brieskornsample",
    "dims": "dims",
}

USAGE = (
    "usage: dalembert <command> [flags]\n\n"
    "Commands: " + ", ".join(COMMAND_MODULES) + "\n"
    "Run 'dalembert <command> --help' for the flags of a command.\n"
)


def load_config(path) -> dict:
    """Read and validate a JSON run config.

    Missing tolerances and the format are filled in from the settings.

    Raises
    ------
    OSError
        If the file can't be read.
    ValueError
        If the file is not valid JSON.
    rest_framework.exceptions.ValidationError
        If the config has unknown keys or invalid values.
    """
    from core.serializers import RunConfigSerializer, default_tolerances

    with open(path) as file:
        data = json.load(file)
    serializer = RunConfigSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    config = dict(serializer.validated_data)
    tolerances = default_tolerances()
    tolerances.update(config.get("tolerances", {}))
    config["tolerances"] = tolerances
    config.setdefault("format", "json")
    return config


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run a report command and return its exit code."""
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] in ("-h", "--help"):
        sys.stdout.write(USAGE)
        return 0 if argv else 2
    if argv[0] not in COMMAND_MODULES:
        sys.stderr.write(f"Unknown command '{argv[0]}'.\n\n{USAGE}")
        return 2

    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "dalembert_toolkit.settings.prod")
    import django
    from django.core.management import load_command_class

    django.setup()
    command = load_command_class("core", COMMAND_MODULES[argv[0]])
    try:
        command.run_from_argv(["dalembert", argv[0], *argv[1:]])
    except SystemExit as e:
        if e.code is None or isinstance(e.code, int):
            return e.code or 0
        return 1
    return 0
