"""Reading and writing complex matrices.

Two formats are supported, chosen by file extension:

``.json``
    ``{"n": n, "re": [[...], ...], "im": [[...], ...]}``, row-major.
``.csv``
    ``n`` rows of ``n`` comma-separated cells ``a+bi`` (no spaces), each
    part printed with 17 significant digits, e.g. ``0.5-0.25i``.

Table output (sweeps, direct-sum tables) uses plain CSV with the same
17-digit float formatting, so identical runs give identical bytes.
"""

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .exceptions import MatrixFormatError

__all__ = ["format_float", "format_complex", "parse_complex", "read_matrix",
           "write_matrix", "matrix_to_json", "matrix_to_csv", "rows_to_csv"]


def format_float(x):
    return format(float(x), ".17g")


def format_complex(z):
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_complex(cell):
    s = cell.strip()
    if not s.endswith("i"):
        raise MatrixFormatError(f"complex cell {cell!r} must end in 'i'")
    try:
        z = complex(s[:-1] + "j")
    except ValueError as exc:
        raise MatrixFormatError(f"cannot parse complex cell {cell!r}") from exc
    return z


def _check(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise MatrixFormatError(f"matrix must be square and non-empty, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise MatrixFormatError("matrix has non-finite entries")
    return m


def matrix_to_json(m):
    m = _check(m)
    return json.dumps({"n": m.shape[0], "re": m.real.tolist(), "im": m.imag.tolist()})


def matrix_from_json(text):
    try:
        obj = json.loads(text)
        n, re, im = obj["n"], np.asarray(obj["re"], float), np.asarray(obj["im"], float)
    except (ValueError, KeyError, TypeError) as exc:
        raise MatrixFormatError(f"bad JSON matrix: {exc}") from exc
    if re.shape != im.shape:
        raise MatrixFormatError(f"re and im shapes differ: {re.shape} vs {im.shape}")
    if re.shape != (n, n):
        raise MatrixFormatError(f"declared n={n} but arrays have shape {re.shape}")
    return _check(re + 1j * im)


def matrix_to_csv(m):
    m = _check(m)
    return "".join(",".join(format_complex(z) for z in row) + "\n" for row in m)


def matrix_from_csv(text):
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise MatrixFormatError("empty CSV matrix")
    if any(len(r) != len(rows[0]) for r in rows):
        raise MatrixFormatError("ragged CSV matrix")
    return _check([[parse_complex(c) for c in r] for r in rows])


def _fmt(path, fmt):
    if fmt is not None:
        return fmt
    return "csv" if Path(path).suffix.lower() == ".csv" else "json"


def read_matrix(path, fmt=None):
    text = Path(path).read_text()
    if _fmt(path, fmt) == "csv":
        return matrix_from_csv(text)
    return matrix_from_json(text)


def write_matrix(path, m, fmt=None):
    text = matrix_to_csv(m) if _fmt(path, fmt) == "csv" else matrix_to_json(m) + "\n"
    Path(path).write_text(text)


def _cell(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, float) and math.isnan(v):
        return "nan"
    return format_float(v)


def rows_to_csv(header, rows):
    """CSV text with fixed formatting; ``rows`` are sequences in ``header`` order."""
    out = [",".join(header)]
    out += [",".join(_cell(v) for v in row) for row in rows]
    return "\n".join(out) + "\n"
