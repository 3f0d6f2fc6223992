"""Figure builders over harness CSV artifacts.

Three figure kinds:
    spectra -- complex-plane scatter of one or more eigenvalue spectra
               (overlaying several steps or methods in one panel)
    trace   -- output vs target over time, train/test panels side by side,
               one panel row per input file (grid layout for interval sweeps)
    pc      -- stacked principal-component trajectory panels

All builders are read-only over their inputs and deterministic in output
dimensions for a fixed spec.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schemas import SchemaError, read_projection, read_spectrum, read_trace


class FigureKind(Enum):
    SPECTRA = "spectra"
    SPECTRA_OVERLAY = "spectra-overlay"
    TRACE = "trace"
    SWEEP_GRID = "sweep-grid"
    PC_TRAJECTORIES = "pc"


@dataclass
class RenderSpec:
    figure: FigureKind
    inputs: list[str]
    labels: list[str] = field(default_factory=list)
    output: str = "figure.svg"

    def resolved_labels(self) -> list[str]:
        if self.labels:
            if len(self.labels) != len(self.inputs):
                raise ValueError(
                    f"{len(self.labels)} labels for {len(self.inputs)} inputs"
                )
            return self.labels
        return [path.rsplit("/", 1)[-1].removesuffix(".csv") for path in self.inputs]


def _require_inputs(spec: RenderSpec) -> None:
    if not spec.inputs:
        raise ValueError("at least one input CSV is required")


def render_spectra(spec: RenderSpec) -> str:
    """Complex-plane scatter with one color per input spectrum.

    Draws the unit circle and the spectral center at -1 as guides.
    """
    _require_inputs(spec)
    labels = spec.resolved_labels()
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    cmap = plt.get_cmap("viridis")
    for i, (path, label) in enumerate(zip(spec.inputs, labels)):
        re, im = read_spectrum(path)
        color = cmap(i / max(len(spec.inputs) - 1, 1))
        ax.scatter(re, im, s=4, color=color, label=label, alpha=0.7,
                   linewidths=0)
    theta = np.linspace(0, 2 * np.pi, 256)
    ax.plot(np.cos(theta), np.sin(theta), color="gray", lw=0.8, ls="--")
    ax.plot(np.cos(theta) - 1.0, np.sin(theta), color="lightgray", lw=0.8,
            ls=":")
    ax.axhline(0, color="black", lw=0.4)
    ax.axvline(0, color="black", lw=0.4)
    ax.plot([-1], [0], marker="+", color="black", ms=8)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.output)
    plt.close(fig)
    return spec.output


def render_trace(spec: RenderSpec) -> str:
    """Output/target overlays, training and testing panels side by side.

    Multiple inputs stack as rows (one per file), e.g. for an
    unroll-interval sweep.
    """
    _require_inputs(spec)
    labels = spec.resolved_labels()
    n_rows = len(spec.inputs)
    fig, axes = plt.subplots(
        n_rows, 2, figsize=(10.0, 2.6 * n_rows), squeeze=False, sharey="row"
    )
    for row, (path, label) in enumerate(zip(spec.inputs, labels)):
        phases = read_trace(path)
        missing = {"train", "test"} - set(phases)
        if missing:
            raise SchemaError(f"{path}: trace missing phases {sorted(missing)}")
        for col, phase in enumerate(("train", "test")):
            steps, zs, targets = phases[phase]
            ax = axes[row][col]
            ax.plot(steps, targets, color="tab:green", lw=1.2, label="target")
            ax.plot(steps, zs, color="tab:red", lw=0.9, label="output")
            ax.set_title(f"{label} ({phase})", fontsize=9)
            ax.set_xlabel("step")
            if col == 0:
                ax.set_ylabel("z")
            ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(spec.output)
    plt.close(fig)
    return spec.output


def render_pc(spec: RenderSpec) -> str:
    """Stacked principal-component trajectory panels, one per input."""
    _require_inputs(spec)
    labels = spec.resolved_labels()
    n_rows = len(spec.inputs)
    fig, axes = plt.subplots(
        n_rows, 1, figsize=(8.0, 1.8 * n_rows), squeeze=False, sharex=True
    )
    for row, (path, label) in enumerate(zip(spec.inputs, labels)):
        steps, values = read_projection(path)
        ax = axes[row][0]
        ax.plot(steps, values, lw=0.9, color="tab:blue")
        ax.set_ylabel(label, fontsize=9)
    axes[-1][0].set_xlabel("step")
    fig.tight_layout()
    fig.savefig(spec.output)
    plt.close(fig)
    return spec.output


RENDERERS = {
    FigureKind.SPECTRA: render_spectra,
    FigureKind.SPECTRA_OVERLAY: render_spectra,
    FigureKind.TRACE: render_trace,
    FigureKind.SWEEP_GRID: render_trace,
    FigureKind.PC_TRAJECTORIES: render_pc,
}


def render(spec: RenderSpec) -> str:
    return RENDERERS[spec.figure](spec)
