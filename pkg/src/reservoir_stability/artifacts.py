"""CSV/JSON serialization of experiment results.

Layout: one directory per (experiment, g, seed) containing
    spectra_<step>.csv      re, im
    radius_timeline.csv     step, radius_center, radius_origin
    trace.csv               step, phase, z, target
    pc_<a>.csv              step, projection
    fractions.csv           component, fraction
    summary.json            config echo + scalar results

Floats are written with 17 significant digits so artifacts are bit-stable
for a fixed config and platform.
"""

from __future__ import annotations

import csv
import json
import os
from typing import Iterable, Optional

from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    PcaResult,
    config_to_dict,
)
from .spectra import SpectrumSnapshot


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def write_csv(path: str, header: list[str], rows: Iterable[tuple]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def run_dir(config: ExperimentConfig, seed: int) -> str:
    assert config.output_dir is not None
    name = f"{config.experiment}_g{config.reservoir.g:g}_seed{seed}"
    if config.experiment == "unroll-sweep":
        name += f"_k{config.schedule.interval}"
    path = os.path.join(config.output_dir, name)
    os.makedirs(path, exist_ok=True)
    return path


def write_spectrum(directory: str, snap: SpectrumSnapshot, label: Optional[str] = None) -> str:
    name = f"spectra_{label if label is not None else snap.step}.csv"
    path = os.path.join(directory, name)
    write_csv(
        path,
        ["re", "im"],
        ((float(ev.real), float(ev.imag)) for ev in snap.eigenvalues),
    )
    return path


def write_result(
    config: ExperimentConfig,
    result: ExperimentResult,
    extra_summary: Optional[dict] = None,
) -> str:
    """Write all artifacts for one run; returns the run directory."""
    directory = run_dir(config, result.seed)
    spectra_files = []
    for snap in result.spectra:
        spectra_files.append(os.path.basename(write_spectrum(directory, snap)))
    write_csv(
        os.path.join(directory, "radius_timeline.csv"),
        ["step", "radius_center", "radius_origin"],
        result.radius_timeline,
    )
    write_csv(
        os.path.join(directory, "trace.csv"),
        ["step", "phase", "z", "target"],
        result.trace,
    )
    summary = {
        "config": config_to_dict(config),
        "seed": result.seed,
        "converged_at": result.converged_at,
        "radius_initial": result.radius_initial,
        "radius_final": result.radius_final,
        "train_rmse": result.train_rmse,
        "test_rmse": result.test_rmse,
        "spectra_distance": result.spectra_distance,
        "spectra_files": spectra_files,
    }
    if extra_summary:
        summary.update(extra_summary)
    write_summary(directory, summary)
    return directory


def write_pca(config: ExperimentConfig, result: PcaResult) -> str:
    directory = run_dir(config, result.seed)
    for a in result.components:
        write_csv(
            os.path.join(directory, f"pc_{a}.csv"),
            ["step", "projection"],
            zip(
                (int(s) for s in result.step_offsets),
                (float(v) for v in result.projections[a]),
            ),
        )
    write_csv(
        os.path.join(directory, "fractions.csv"),
        ["component", "fraction"],
        ((i + 1, float(f)) for i, f in enumerate(result.fractions)),
    )
    summary = {
        "config": config_to_dict(config),
        "seed": result.seed,
        "converged_at": result.training.converged_at,
        "fluctuation_scores": {str(a): result.scores[a] for a in result.components},
    }
    write_summary(directory, summary)
    return directory


def write_summary(directory: str, summary: dict) -> str:
    path = os.path.join(directory, "summary.json")
    with open(path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path
