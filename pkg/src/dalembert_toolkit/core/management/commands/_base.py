"""Shared machinery of the report commands.

Every report command reads its input from a JSON file (`--input`) and
from command line flags, validates it with the command's input
serializer, computes a payload and writes a report envelope as JSON or
CSV. Flags given on the command line override the input file, which
overrides the run config, which overrides the settings.
"""
import json
import logging
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence

import numpy as np
from core import models
from core.cli import load_config
from core.renderers import CSVRenderer, ReportJSONRenderer
from core.serializers import (
    FAIL,
    FORMATS,
    PASS,
    ReportEnvelopeSerializer,
    RunConfigSerializer,
    default_tolerances,
)
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from django.utils import timezone
from rest_framework.exceptions import ValidationError
from util import atomic_write, open_or_pass, parse_key_value

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
VERDICT_FAILED = 1


@dataclass
class Outcome:
    """The computed payload of a command and its verdict.

    `rows` and `header` hold the point stream written in CSV format.
    """

    payload: dict
    passed: bool = True
    header: Optional[Sequence[str]] = None
    rows: Optional[Iterable[Sequence[Any]]] = None


def format_errors(detail, prefix="") -> str:
    """Flatten DRF validation errors into ``key: message`` lines."""
    if isinstance(detail, dict):
        return "\n".join(
            format_errors(value, f"{prefix}{key}." if prefix else f"{key}.")
            for key, value in detail.items()
        )
    if isinstance(detail, list):
        if all(not isinstance(item, (dict, list)) for item in detail):
            messages = " ".join(str(item) for item in detail)
            return f"{prefix[:-1]}: {messages}" if prefix else messages
        return "\n".join(
            format_errors(item, f"{prefix}{i}.") for i, item in enumerate(detail)
        )
    return f"{prefix[:-1]}: {detail}" if prefix else str(detail)


class ReportCommand(BaseCommand):
    """Base class of the commands emitting a report envelope."""

    #: Name of the command in reports and run configs
    command_name: str = None
    input_serializer_class = None
    #: Options of `add_input_arguments` copied into the input
    input_options: Sequence[str] = ()
    csv_supported = True

    # docstr-coverage: inherited
    def add_arguments(self, parser):
        parser.add_argument(
            "--config",
            type=str,
            help="Path to a JSON run config. Defaults to the DALEMBERT_CONFIG "
            "setting.",
        )
        parser.add_argument(
            "--input",
            type=str,
            help="Path to a JSON file with the command input. Flags override it.",
        )
        parser.add_argument(
            "--format", type=str, choices=FORMATS, help="Report format (json)."
        )
        parser.add_argument(
            "--output",
            type=str,
            help="Path of the report. Written to standard output if omitted.",
        )
        parser.add_argument("--seed", type=int, help="Seed of the random sampling.")
        parser.add_argument(
            "--tolerance",
            action="append",
            default=[],
            metavar="NAME=VALUE",
            help="Override a tolerance; may be repeated. Names: "
            + ", ".join(default_tolerances())
            + ".",
        )
        self.add_input_arguments(parser)

    def add_input_arguments(self, parser):
        """Add the flags that override keys of the input."""

    def compute(self, params: dict, context: dict) -> Outcome:
        """Compute the report payload from the validated input.

        Parameters
        ----------
        params
            The validated input.
        context
            The effective ``tolerances``, ``seed`` and ``coefficients``.
        """
        raise NotImplementedError

    # docstr-coverage: inherited
    def handle(self, *args, **options):
        try:
            config = self.run_config(options)
            fmt = options["format"] or config.get("format", "json")
            if fmt == "csv" and not self.csv_supported:
                raise CommandError(
                    f"The {self.command_name} report has no CSV format.",
                    returncode=USAGE_ERROR,
                )
            context = self.context(options, config)
            params = self.validate_input(self.read_input(options, config))
            outcome = self.compute(params, context)
        except ValidationError as e:
            raise CommandError(format_errors(e.detail), returncode=USAGE_ERROR)
        except (models.ToolkitError, ValueError, OSError) as e:
            raise CommandError(str(e), returncode=USAGE_ERROR)

        if fmt == "csv":
            content = CSVRenderer().render(
                {"header": outcome.header, "rows": outcome.rows}
            )
        else:
            envelope = self.envelope(params, context, config, outcome)
            content = ReportJSONRenderer().render(envelope)
        self.write(content, options["output"] or config.get("output"))

        if not outcome.passed:
            raise CommandError(
                f"{self.command_name}: verdict {FAIL}.", returncode=VERDICT_FAILED
            )

    def run_config(self, options) -> dict:
        """The validated run config, or an empty one."""
        path = options["config"] or settings.DALEMBERT_CONFIG
        if not path:
            return {}
        config = load_config(path)
        command = config.get("command")
        if command is not None and command != self.command_name:
            raise CommandError(
                f"command: The config is for '{command}', not '{self.command_name}'.",
                returncode=USAGE_ERROR,
            )
        return config

    def context(self, options, config) -> dict:
        """Effective tolerances, seed and coefficient override."""
        tolerances = default_tolerances()
        tolerances.update(config.get("tolerances", {}))
        if options["tolerance"]:
            overrides = parse_key_value(options["tolerance"])
            serializer = RunConfigSerializer(data={"tolerances": overrides})
            serializer.is_valid(raise_exception=True)
            tolerances.update(serializer.validated_data["tolerances"])
        seed = options["seed"] if options["seed"] is not None else config.get("seed")
        return {
            "tolerances": tolerances,
            "seed": seed,
            "coefficients": config.get("coefficients"),
        }

    def read_input(self, options, config) -> dict:
        """The input file merged with the flags in `input_options`."""
        path = options["input"] or config.get("input")
        data = {}
        if path:
            with open_or_pass(path) as file:
                data = json.load(file)
            if not isinstance(data, dict):
                raise ValidationError({"input": ["Expected a JSON object."]})
        for name in self.input_options:
            if options.get(name) is not None:
                data[name] = options[name]
        return data

    def validate_input(self, data) -> dict:
        """Validate the input with `input_serializer_class`."""
        serializer = self.input_serializer_class(data=data)
        serializer.is_valid(raise_exception=True)
        return dict(serializer.validated_data)

    def echo(self, params: dict) -> dict:
        """The input as echoed in the report."""
        return json.loads(json.dumps(params))

    def envelope(self, params, context, config, outcome: Outcome) -> dict:
        """Serialize the report envelope."""
        arguments = {
            "input": self.echo(params),
            "seed": context["seed"],
            "tolerances": context["tolerances"],
        }
        if config.get("coefficients") is not None:
            arguments["coefficients"] = config["coefficients"]
        return ReportEnvelopeSerializer(
            {
                "tool_version": settings.TOOL_VERSION,
                "grammar_version": models.GRAMMAR_VERSION,
                "command": self.command_name,
                "arguments": arguments,
                "timestamp": timezone.now(),
                "payload": outcome.payload,
                "summary": PASS if outcome.passed else FAIL,
            }
        ).data

    def write(self, content: bytes, path: Optional[str]):
        """Write `content` to `path`, or to standard output."""
        if path:
            with atomic_write(path, "wb") as file:
                file.write(content)
            self.stdout.write(self.style.SUCCESS(f"Report written to {path}."))
        else:
            self.stdout.write(content.decode(), ending="")


class SamplingCommand(ReportCommand):
    """Report command evaluating a field at explicit or random points."""

    def sample_points(self, params: dict, n: int, seed) -> list:
        """`params["points"]`, or `sample_count` uniform points of the box."""
        if "points" in params:
            return [list(p) for p in params["points"]]
        rng = np.random.default_rng(seed)
        points = rng.uniform(params["low"], params["high"], (params["sample_count"], n))
        return points.tolist()
