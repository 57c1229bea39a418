"""Deterministic CSV/JSON emission of sweep records.

Output depends only on the records and the output spec: fixed column order,
fixed number formatting, no timestamps.  CSV uses RFC-4180 quoting with CRLF
row terminators; JSON is an array of row objects with the same field names.
Magnitudes beyond 10^(+-12) are printed in scientific notation straight from
the log representation, so values far outside double range still print
correctly to the declared precision.
"""

from __future__ import annotations

import csv
import io
import json
import math

from .config import COLUMNS, OutputSpec
from .errors import DomainError
from .sharpness import SweepRecord
from .specfun import LogValue

__all__ = ["format_number", "format_log_value", "render_csv", "render_json",
           "emit_table"]

_LN10 = math.log(10.0)
_SCI_CUTOFF = 12  # |log10| beyond which scientific notation kicks in


def _sci_from_log10(log10: float, negative: bool, precision: int) -> str:
    exp10 = math.floor(log10)
    mantissa = 10.0 ** (log10 - exp10)
    # Guard against mantissa rounding up to 10 at the print precision.
    if round(mantissa, precision) >= 10.0:
        mantissa /= 10.0
        exp10 += 1
    sign = "-" if negative else ""
    return f"{sign}{mantissa:.{precision}f}e{exp10:+d}"


def format_log_value(value: LogValue, precision: int) -> str:
    """Print a LogValue at the given precision without leaving log domain
    for huge magnitudes."""
    if value.sign == 0:
        return f"{0.0:.{precision}f}"
    log10 = value.log_abs / _LN10
    if abs(log10) >= _SCI_CUTOFF:
        return _sci_from_log10(log10, value.sign < 0, precision)
    return f"{value.to_linear():.{precision}f}"


def format_number(x: float, precision: int) -> str:
    if x != x:
        raise DomainError("refusing to format NaN")
    if x == 0.0:
        return f"{0.0:.{precision}f}"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if abs(x) >= 10.0 ** _SCI_CUTOFF or abs(x) < 10.0 ** (-_SCI_CUTOFF):
        return _sci_from_log10(math.log10(abs(x)), x < 0, precision)
    return f"{x:.{precision}f}"


def _cell(record: SweepRecord, column: str, precision: int) -> str:
    s = record.setting
    if column == "m":
        return str(s.m)
    if column == "n":
        return str(s.n)
    if column == "alpha":
        return format_number(s.alpha, precision)
    if column == "delta":
        return "" if record.delta is None else format_number(record.delta, precision)
    if column == "p":
        return "" if record.p is None else format_number(record.p, precision)
    if column == "q":
        return "" if record.q is None else format_number(record.q, precision)
    if column in ("lhs", "constant", "rhs"):
        value = {"lhs": record.lhs, "constant": record.bound_constant,
                 "rhs": record.rhs}[column]
        return "" if value is None else format_log_value(value, precision)
    if column == "ratio":
        return "" if record.ratio is None else format_number(record.ratio, precision)
    if column == "pass":
        return "" if record.passed is None else ("true" if record.passed else "false")
    if column == "notes":
        return record.notes
    raise DomainError(f"unknown column {column!r}")


def render_csv(records: list[SweepRecord], precision: int,
               columns: tuple[str, ...] | None = None) -> str:
    cols = list(columns) if columns else list(COLUMNS)
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    writer.writerow(cols)
    for rec in records:
        writer.writerow([_cell(rec, c, precision) for c in cols])
    return buf.getvalue()


def _json_token(record: SweepRecord, column: str, precision: int) -> str:
    raw = _cell(record, column, precision)
    if column in ("m", "n"):
        return raw
    if column == "pass":
        return "null" if raw == "" else raw
    if column == "notes":
        return json.dumps(raw)
    if raw == "":
        return "null"
    if raw in ("inf", "-inf"):
        return json.dumps(raw)
    return raw  # fixed or scientific numeric token, valid JSON


def render_json(records: list[SweepRecord], precision: int,
                columns: tuple[str, ...] | None = None) -> str:
    cols = list(columns) if columns else list(COLUMNS)
    rows = []
    for rec in records:
        fields = ", ".join(
            f"{json.dumps(c)}: {_json_token(rec, c, precision)}" for c in cols
        )
        rows.append("  {" + fields + "}")
    return "[\n" + ",\n".join(rows) + "\n]\n"


def emit_table(records: list[SweepRecord], output: OutputSpec) -> str:
    """Render records per the output spec; write to output.path if set.
    Returns the rendered text."""
    if not records:
        raise DomainError("emit_table needs at least one record")
    if output.format == "csv":
        text = render_csv(records, output.precision, output.columns)
    elif output.format == "json":
        text = render_json(records, output.precision, output.columns)
    else:
        raise DomainError(f"unknown output format {output.format!r}")
    if output.path is not None:
        with open(output.path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
