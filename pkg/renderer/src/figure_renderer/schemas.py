"""Readers for the experiment-harness CSV schemas.

All readers are strictly read-only and validate the header row before
parsing; a malformed or missing file raises SchemaError with the filename.
"""

from __future__ import annotations

import csv
import os


class SchemaError(ValueError):
    """CSV file missing or not conforming to the expected schema."""


def _read_rows(path: str, expected_header: list[str]) -> list[list[str]]:
    if not os.path.isfile(path):
        raise SchemaError(f"{path}: no such file")
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != expected_header:
        found = rows[0] if rows else "empty file"
        raise SchemaError(
            f"{path}: expected header {expected_header}, found {found}"
        )
    return rows[1:]


def read_spectrum(path: str) -> tuple[list[float], list[float]]:
    """spectra_<step>.csv: columns re, im."""
    rows = _read_rows(path, ["re", "im"])
    try:
        re = [float(r[0]) for r in rows]
        im = [float(r[1]) for r in rows]
    except (ValueError, IndexError) as exc:
        raise SchemaError(f"{path}: malformed spectrum row: {exc}") from exc
    return re, im


def read_trace(path: str) -> dict[str, tuple[list[int], list[float], list[float]]]:
    """trace.csv: columns step, phase, z, target; returns per-phase series."""
    rows = _read_rows(path, ["step", "phase", "z", "target"])
    out: dict[str, tuple[list[int], list[float], list[float]]] = {}
    try:
        for step, phase, z, target in rows:
            steps, zs, targets = out.setdefault(phase, ([], [], []))
            steps.append(int(step))
            zs.append(float(z))
            targets.append(float(target))
    except ValueError as exc:
        raise SchemaError(f"{path}: malformed trace row: {exc}") from exc
    return out


def read_projection(path: str) -> tuple[list[int], list[float]]:
    """pc_<a>.csv: columns step, projection."""
    rows = _read_rows(path, ["step", "projection"])
    try:
        steps = [int(r[0]) for r in rows]
        values = [float(r[1]) for r in rows]
    except (ValueError, IndexError) as exc:
        raise SchemaError(f"{path}: malformed projection row: {exc}") from exc
    return steps, values
