"""Report writers (CSV and JSON) and the CSV reader used by ``plot``."""

import csv
import io
from pathlib import Path

from rest_framework.renderers import JSONRenderer

from bounds import BoundReport, Method, Rigor
from cli.serializers import BoundReportSerializer
from numerics import Sign

CSV_FIELDS = [
    "n",
    "method",
    "gauge",
    "phi",
    "rho_star",
    "bound",
    "log_bound",
    "rigor",
    "g_prime0",
    "g_second0_sign",
    "g_prime_rn_sign",
]

FLOAT_FIELDS = {"phi", "rho_star", "log_bound", "g_prime0"}


class ReportFormatError(ValueError):
    pass


def _csv_cell(field: str, value) -> str:
    if value is None:
        return ""
    if field in FLOAT_FIELDS:
        return f"{value:.17g}"
    return str(value)


def render_csv(reports: list[BoundReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for data in BoundReportSerializer(reports, many=True).data:
        writer.writerow([_csv_cell(field, data[field]) for field in CSV_FIELDS])
    return buffer.getvalue()


def render_json(reports: list[BoundReport]) -> str:
    payload = JSONRenderer().render(BoundReportSerializer(reports, many=True).data)
    return payload.decode("utf-8") + "\n"


def _optional(enum_type, value):
    return enum_type(value) if value is not None else None


def report_from_row(row: dict, line: int | None = None) -> BoundReport:
    data = {field: (value if value != "" else None) for field, value in row.items() if field in CSV_FIELDS}
    serializer = BoundReportSerializer(data=data)
    if not serializer.is_valid():
        details = "; ".join(f"{field}: {errors[0]}" for field, errors in serializer.errors.items())
        raise ReportFormatError(f"line {line}: {details}" if line else details)
    attrs = serializer.validated_data
    return BoundReport(
        n=attrs["n"],
        method=Method(attrs["method"]),
        log_bound=attrs["log_bound"],
        rigor=Rigor(attrs["rigor"]),
        gauge=attrs.get("gauge"),
        phi=attrs.get("phi"),
        rho_star=attrs.get("rho_star"),
        g_prime0=attrs.get("g_prime0"),
        g_second0_sign=_optional(Sign, attrs.get("g_second0_sign")),
        g_prime_rn_sign=_optional(Sign, attrs.get("g_prime_rn_sign")),
    )


def parse_csv(text: str) -> list[BoundReport]:
    reader = csv.DictReader(io.StringIO(text))
    missing = set(CSV_FIELDS) - set(reader.fieldnames or [])
    if reader.fieldnames is not None and missing:
        raise ReportFormatError(f"missing columns: {', '.join(sorted(missing))}")
    return [report_from_row(row, line) for line, row in enumerate(reader, start=2)]


def read_reports(path: Path | str) -> list[BoundReport]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise ReportFormatError(f"cannot read {path}: {error.strerror}") from error
    return parse_csv(text)
