"""Tabular input and deterministic result serialization.

CSV input is UTF-8 with a header row, comma-delimited, '.' decimal.  Every
cell must parse as a number; missing values are rejected rather than
imputed.  Row/column positions in error messages are 1-based (rows count
data rows, excluding the header).

Output floats are rendered with 17 significant digits so a reload
reproduces the exact value; the JSON emitter below keeps key order and
whitespace fixed, making equal documents byte-identical.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .errors import ArgumentError, DataError
from .kernels import DataMatrix


def _resolve_response_columns(header, response_columns):
    if not response_columns:
        raise ArgumentError("at least one response column is required")
    positions = []
    for item in response_columns:
        if isinstance(item, str) and item in header:
            positions.append(header.index(item))
            continue
        try:
            idx = int(item)
        except (TypeError, ValueError):
            raise ArgumentError(f"response column {item!r} not found in header {header}")
        if not 1 <= idx <= len(header):
            raise ArgumentError(
                f"response column position {idx} outside 1..{len(header)}"
            )
        positions.append(idx - 1)
    if len(set(positions)) != len(positions):
        raise ArgumentError("duplicate response columns")
    return positions


def load_csv(path, response_columns):
    """Load a CSV file into predictor and response matrices.

    response_columns entries are header names or 1-based positions.  The
    remaining columns become predictors, preserving file order; column
    names are retained on both matrices.

    Returns
    -------
    (x, y) : pair of DataMatrix
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as e:
        raise DataError(f"cannot open {path}: {e}") from None
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path}: empty file, expected a header row")
        header = [h.strip() for h in header]
        rows = list(reader)
    if not rows:
        raise DataError(f"{path}: no data rows below the header")

    y_pos = _resolve_response_columns(header, response_columns)
    x_pos = [j for j in range(len(header)) if j not in y_pos]
    if not x_pos:
        raise ArgumentError("every column was taken as a response; no predictors remain")

    values = np.empty((len(rows), len(header)))
    for i, row in enumerate(rows, start=1):
        if len(row) != len(header):
            raise DataError(
                f"row {i}: expected {len(header)} cells, found {len(row)}"
            )
        for j, cell in enumerate(row):
            text = cell.strip()
            if text == "":
                raise DataError(
                    f"missing value at row {i}, column {j + 1} ('{header[j]}')"
                )
            try:
                values[i - 1, j] = float(text)
            except ValueError:
                raise DataError(
                    f"could not parse '{text}' at row {i}, column {j + 1} ('{header[j]}')"
                ) from None

    x = DataMatrix(values=values[:, x_pos], columns=[header[j] for j in x_pos])
    y = DataMatrix(values=values[:, y_pos], columns=[header[j] for j in y_pos])
    return x, y


def format_float(v: float) -> str:
    """17-significant-digit rendering; round-trips through float()."""
    return format(float(v), ".17g")


def _emit(value, indent: int, out: list):
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        items = list(value.items())
        for k, (key, v) in enumerate(items):
            out.append(f"{pad}  {json.dumps(str(key))}: ")
            _emit(v, indent + 1, out)
            out.append(",\n" if k + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        seq = list(value)
        if not seq:
            out.append("[]")
            return
        out.append("[\n")
        for k, v in enumerate(seq):
            out.append(pad + "  ")
            _emit(v, indent + 1, out)
            out.append(",\n" if k + 1 < len(seq) else "\n")
        out.append(pad + "]")
    elif value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(format_float(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    else:
        raise ArgumentError(f"cannot serialize {type(value).__name__} to JSON")


def json_dumps(doc) -> str:
    """Deterministic JSON text: fixed key order, fixed whitespace, 17-digit floats."""
    out: list = []
    _emit(doc, 0, out)
    out.append("\n")
    return "".join(out)


def write_csv_rows(fh, header, rows):
    """Write rows of mixed atoms with the same float rendering as JSON."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_float(v) if isinstance(v, (float, np.floating)) else v for v in row]
        )
