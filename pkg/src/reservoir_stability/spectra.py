"""Linearized dynamics and their eigenvalue spectra.

The Jacobian of the rate dynamics has the form -I + M where
M = W diag(phi'(x)) + w_fb w_out^T diag(phi'(x_unroll)); the rank-one
feedback term is evaluated at the state of the previous unrolling instance.
The reported radius is the max modulus of the eigenvalues of M, i.e. the
radius of the Jacobian's spectral circle about its center at -1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EigensolverError
from .network import WeightSet


@dataclass
class SpectrumSnapshot:
    """Eigenvalues of the linearized dynamics at one training step.

    `eigenvalues` are those of the Jacobian (-1 shift included);
    `radius` = max |lambda + 1|; `max_real` = max Re(lambda).
    """

    step: int
    eigenvalues: np.ndarray  # (n,) complex
    radius: float
    max_real: float


def phi_prime(x: np.ndarray) -> np.ndarray:
    """Derivative of tanh, 1/cosh(x)^2, elementwise.

    Computed via cosh to avoid the cancellation of 1 - tanh^2 near
    saturation; underflows to exactly 0 only beyond |x| ~ 355.
    """
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore"):
        return np.cosh(x) ** -2.0


def jacobian_unrolled(
    w: np.ndarray,
    w_fb: np.ndarray,
    w_out: np.ndarray,
    x_current: np.ndarray,
    x_unroll: np.ndarray,
) -> np.ndarray:
    """Jacobian of the unrolled dynamics.

    J = -I + W diag(phi'(x_current)) + w_fb w_out^T diag(phi'(x_unroll)),
    where x_unroll is the state of the previous unrolling instance.
    """
    n = w_fb.shape[0]
    if w.shape != (n, n) or w_out.shape != (n,):
        raise ValueError("weight dimensions disagree")
    if x_current.shape != (n,) or x_unroll.shape != (n,):
        raise ValueError("state dimensions disagree")
    j = w * phi_prime(x_current)
    j += np.outer(w_fb, w_out * phi_prime(x_unroll))
    j[np.diag_indices(n)] -= 1.0
    return j


def jacobian_closed(
    w: np.ndarray, w_fb: np.ndarray, w_out: np.ndarray, x: np.ndarray
) -> np.ndarray:
    """Closed-loop Jacobian J = -I + (W + w_fb w_out^T) diag(phi'(x))."""
    return jacobian_unrolled(w, w_fb, w_out, x, x)


def eigenspectrum(m: np.ndarray) -> np.ndarray:
    """Full eigenvalue set of a dense real matrix, in solver order."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix contains non-finite entries")
    try:
        return np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(
            f"eigendecomposition failed (fro norm {np.linalg.norm(m):.3e}): {exc}"
        ) from exc


def snapshot(
    weights: WeightSet,
    x_current: np.ndarray,
    x_unroll: np.ndarray,
    step: int,
) -> SpectrumSnapshot:
    """Spectrum of the unrolled Jacobian at one step.

    The radius is computed from the unshifted matrix
    W diag(phi') + w_fb w_out^T diag(phi'_unroll), matching max |lambda + 1|
    of the Jacobian eigenvalues exactly.
    """
    n = weights.n
    m = weights.w * phi_prime(x_current)
    m += np.outer(weights.w_fb, weights.w_out * phi_prime(x_unroll))
    pre_shift = eigenspectrum(m)
    lam = pre_shift - 1.0
    return SpectrumSnapshot(
        step=step,
        eigenvalues=lam,
        radius=float(np.max(np.abs(pre_shift))) if n else 0.0,
        max_real=float(np.max(lam.real)) if n else 0.0,
    )


def spectra_distance(a: SpectrumSnapshot, b: SpectrumSnapshot) -> float:
    """Symmetric Hausdorff distance between two spectra in the complex plane."""
    va = np.asarray(a.eigenvalues).ravel()
    vb = np.asarray(b.eigenvalues).ravel()
    if va.shape != vb.shape:
        raise ValueError(f"spectrum sizes differ: {va.shape} vs {vb.shape}")
    d = np.abs(va[:, None] - vb[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))
