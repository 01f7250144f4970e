"""Frozen CSV schemas for the laboratory's outputs, with column validation."""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

SCHEMAS = {
    "field": ("x", "y", "value"),
    "energy": ("r", "F", "Wgt"),
    "eigen": ("rho", "lambda", "lambda_rho_sq"),
    "score": ("theta", "residual"),
    "phase": ("t", "h", "hp", "H"),
}


class SchemaError(ValueError):
    pass


def load_table(path, schema: str) -> dict:
    """Columns of a CSV as float arrays; raises SchemaError naming the first
    missing or malformed column."""
    expected = SCHEMAS[schema]
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"input file not found: {path}")
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise SchemaError(f"empty input file: {path}")
        for col in expected:
            if col not in header:
                raise SchemaError(f"missing column `{col}` in {path}")
        idx = {col: header.index(col) for col in expected}
        cols = {col: [] for col in expected}
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            for col in expected:
                cell = row[idx[col]] if idx[col] < len(row) else ""
                try:
                    cols[col].append(float(cell))
                except ValueError:
                    raise SchemaError(
                        f"column `{col}` has a non-numeric value "
                        f"{cell!r} at line {lineno} of {path}")
    out = {col: np.asarray(vals) for col, vals in cols.items()}
    n = len(next(iter(out.values())))
    if n == 0:
        raise SchemaError(f"no data rows in {path}")
    return out


def field_to_grid(table: dict):
    """Pivot the x,y,value triplets back onto the structured grid."""
    xs = np.unique(table["x"])
    ys = np.unique(table["y"])
    if len(xs) * len(ys) != len(table["value"]):
        raise SchemaError("column `value` does not fill a full x-y grid")
    order = np.lexsort((table["x"], table["y"]))
    values = table["value"][order].reshape(len(ys), len(xs))
    return xs, ys, values
