"""Line-oriented report and data files.

A file is a header block of ``key: value`` lines, then a ``#``-prefixed row of column
names, then whitespace-separated rows. Floats are written with 17 significant digits.
"""

import io
from collections.abc import Mapping
from pathlib import Path
from typing import Any, NamedTuple

import click
import pandas as pd

from ..data.schemas import CheckResult, Report
from ..utils.logging import get_logger

logger = get_logger("reports")

FLOAT_FORMAT = "%.17g"
CHECK_COLUMNS = ["name", "residual", "tolerance", "passed"]


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    if isinstance(value, list | tuple):
        return " ".join(format_value(v) for v in value)
    return str(value)


def header_lines(header: Mapping[str, Any]) -> list[str]:
    return [f"{key}: {format_value(value)}" for key, value in header.items()]


def render_table(header: Mapping[str, Any], frame: pd.DataFrame) -> str:
    """Header block, column row and 17-digit rows."""
    body = frame.to_csv(sep=" ", header=False, index=False, float_format=FLOAT_FORMAT)
    lines = header_lines(header) + ["# " + " ".join(str(c) for c in frame.columns)]
    return "\n".join(lines) + "\n" + body


def render_report(report: Report, extra: Mapping[str, Any] | None = None) -> str:
    """Serialize a Report: tool, job echo, values and summary, then one row per check."""
    header: dict[str, Any] = {"tool": report.tool, "version": report.version}
    header.update({f"job.{key}": value for key, value in report.job.items()})
    header.update({key: float(value) for key, value in report.values.items()})
    header.update(extra or {})
    header["passed"] = report.passed
    frame = pd.DataFrame(
        [
            [c.name, c.residual, c.tolerance, format_value(c.passed)]
            for c in report.checks
        ],
        columns=CHECK_COLUMNS,
    )
    return render_table(header, frame)


class ParsedFile(NamedTuple):
    header: dict[str, str]
    table: pd.DataFrame


def parse_file(text: str) -> ParsedFile:
    """Read back a file written by ``render_table``."""
    header: dict[str, str] = {}
    lines = text.splitlines()
    for index, line in enumerate(lines):
        if line.startswith("#"):
            columns = line[1:].split()
            rows = "\n".join(lines[index + 1 :])
            table = (
                pd.read_csv(io.StringIO(rows), sep=" ", names=columns, header=None)
                if rows.strip()
                else pd.DataFrame(columns=columns)
            )
            return ParsedFile(header, table)
        key, _, value = line.partition(": ")
        header[key] = value
    raise ValueError("no column row found")


def checks_from_rows(table: pd.DataFrame) -> list[CheckResult]:
    return [
        CheckResult(
            name=str(row["name"]),
            residual=float(row["residual"]),
            tolerance=float(row["tolerance"]),
            passed=str(row["passed"]).lower() == "true",
        )
        for _, row in table.iterrows()
    ]


def emit(text: str, out: Path | None) -> None:
    """Write to ``out`` or stdout."""
    if out is None:
        click.echo(text, nl=False)
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {out}")
