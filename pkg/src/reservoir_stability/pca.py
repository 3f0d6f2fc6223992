"""PCA of firing-rate trajectories.

The equal-time cross-correlation matrix D_ij = <(r_i - <r_i>)(r_j - <r_j>)>
(plain time average, divide by T) is diagonalized; component trajectories
are the centered history projected on its eigenvectors. A mean-crossing
rate serves as a scalar fluctuation score separating slowly varying leading
components from rapidly fluctuating trailing ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientHistoryError


@dataclass
class RateHistory:
    """T x N matrix of firing rates plus the simulation step of each row."""

    rows: np.ndarray           # (T, n)
    step_offsets: np.ndarray   # (T,) int

    @property
    def t(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]


@dataclass
class PcDecomposition:
    eigenvalues: np.ndarray  # (n,) descending
    components: np.ndarray   # (n, n), orthonormal columns
    fractions: np.ndarray    # (n,) eigenvalue / trace


def correlation_matrix(history: RateHistory) -> np.ndarray:
    """Equal-time cross-correlation matrix of the centered rates."""
    if history.t < 2:
        raise InsufficientHistoryError(
            f"need at least 2 time steps, got {history.t}"
        )
    centered = history.rows - history.rows.mean(axis=0)
    d = centered.T @ centered / history.t
    return 0.5 * (d + d.T)


def pc_decomposition(d: np.ndarray) -> PcDecomposition:
    """Symmetric eigendecomposition of d, sorted by descending eigenvalue."""
    d = np.asarray(d, dtype=float)
    asym = float(np.max(np.abs(d - d.T))) if d.size else 0.0
    if asym > 1e-8:
        raise ValueError(f"matrix asymmetry {asym:.3e} exceeds 1e-8")
    eigenvalues, components = np.linalg.eigh(0.5 * (d + d.T))
    order = np.argsort(eigenvalues)[::-1]
    eigenvalues = eigenvalues[order]
    components = components[:, order]
    total = float(eigenvalues.sum())
    if total > 1e-300:
        fractions = eigenvalues / total
    else:
        fractions = np.zeros_like(eigenvalues)
    return PcDecomposition(
        eigenvalues=eigenvalues, components=components, fractions=fractions
    )


def project_trajectory(
    history: RateHistory, decomposition: PcDecomposition, a: int
) -> np.ndarray:
    """Centered history projected on principal component a (1-indexed)."""
    if not 1 <= a <= history.n:
        raise ValueError(f"component index {a} out of range 1..{history.n}")
    centered = history.rows - history.rows.mean(axis=0)
    return centered @ decomposition.components[:, a - 1]


def fluctuation_score(trajectory: np.ndarray) -> float:
    """Mean-crossing rate of a trajectory, in [0, 1].

    Sign changes of the mean-centered series divided by (T - 1); 0 for a
    constant series, 1 for a strictly alternating one.
    """
    trajectory = np.asarray(trajectory, dtype=float)
    t = trajectory.shape[0]
    if t < 3:
        raise InsufficientHistoryError(f"need at least 3 samples, got {t}")
    centered = trajectory - trajectory.mean()
    signs = np.sign(centered)
    crossings = int(np.count_nonzero(signs[1:] * signs[:-1] < 0))
    return crossings / (t - 1)
