# smcmartin/utils/formatting.py
import csv
import io
from fractions import Fraction
from typing import Iterable, Sequence, Union

from smcmartin.errors import ParameterError

Real = Union[Fraction, float, int]


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", "p" or a finite decimal into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"not a rational number: {text!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_real(x: float) -> str:
    return f"{float(x):.17g}"


def format_number(x: Real) -> str:
    if isinstance(x, (Fraction, int)):
        return format_rational(Fraction(x))
    return format_real(x)


def format_vector(values: Sequence[Real]) -> str:
    return "(" + ", ".join(format_number(v) for v in values) + ")"


def format_matrix(rows: Sequence[Sequence[Real]]) -> str:
    return "[" + ", ".join("[" + ", ".join(format_number(v) for v in row) + "]" for row in rows) + "]"


def render_rows(header: Sequence[str], rows: Iterable[Sequence[str]], fmt: str) -> str:
    """Render string rows as CSV or as a space-aligned table."""
    rows = [list(r) for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"
