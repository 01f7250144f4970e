"""Deterministic JSON/CSV serialization for run reports.

Reports must be byte-identical across identical runs: keys are sorted, floats
go through repr, and nothing time- or host-dependent is ever written.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import __version__
from .tolerances import DEFAULT as TOL


def _sanitize(obj):
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    return obj


def write_report(path, payload: dict) -> None:
    body = {
        "version": __version__,
        "tolerances": TOL.as_dict(),
    }
    body.update(_sanitize(payload))
    text = json.dumps(body, sort_keys=True, indent=2)
    Path(path).write_text(text + "\n")


def write_csv(path, header: str, rows) -> None:
    arr = np.asarray(rows, dtype=float)
    np.savetxt(str(path), arr, delimiter=",", header=header, comments="")
