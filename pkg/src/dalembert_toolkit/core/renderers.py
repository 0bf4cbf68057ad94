"""Renderers writing reports to bytes."""
import csv
import io
import json

from rest_framework.renderers import BaseRenderer, JSONRenderer

__all__ = ("ReportJSONRenderer", "CSVRenderer")


class ReportJSONRenderer(JSONRenderer):
    """
    JSONRenderer with a fixed indentation and a trailing newline, so that
    equal reports render to equal bytes.

    Non-finite floats are rejected; report serializers represent them
    as strings or null.
    """

    indent = 2
    separators = (",", ": ")

    # docstr-coverage: inherited
    def render(self, data, accepted_media_type=None, renderer_context=None):
        if data is None:
            return b""
        ret = json.dumps(
            data,
            cls=self.encoder_class,
            indent=self.indent,
            ensure_ascii=self.ensure_ascii,
            allow_nan=False,
            separators=self.separators,
        )
        return ret.encode() + b"\n"


class CSVRenderer(BaseRenderer):
    """
    Renderer for point streams.

    The data is a dict with a ``header`` list and a ``rows`` iterable of
    sequences; floats are written with `repr` precision.
    """

    media_type = "text/csv"
    format = "csv"
    charset = "utf-8"

    # docstr-coverage: inherited
    def render(self, data, accepted_media_type=None, renderer_context=None):
        if data is None:
            return b""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(data["header"])
        for row in data["rows"]:
            writer.writerow(["" if value is None else value for value in row])
        return buffer.getvalue().encode(self.charset)
