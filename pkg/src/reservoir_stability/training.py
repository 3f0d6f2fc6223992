"""Online readout training: exact-fit least squares and recursive least squares.

Fixed-point targets use a per-state minimum-norm correction so that
w_out . r = a exactly after each update. Time-varying targets use the
standard RLS form (inverse correlation matrix P) with one update per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, ParameterError, SilentNetworkError


@dataclass(frozen=True)
class FixedPointTarget:
    """Constant target f(step) = amplitude."""

    amplitude: float

    def __call__(self, step: int) -> float:
        return self.amplitude


@dataclass(frozen=True)
class SinusoidTarget:
    """Sinusoidal target f(step) = sin(omega * time_scale * step).

    With the defaults one period spans 1000 steps; paired with dt = 0.1
    this is the same continuous-time waveform as a period of 100 steps at
    dt = 1, sampled ten times finer, so per-step quantities (state motion,
    spectra drift between consecutive steps) are correspondingly smaller.
    """

    omega: float = 20.0 * math.pi
    time_scale: float = 0.0001

    def __call__(self, step: int) -> float:
        return math.sin(self.omega * self.time_scale * step)


TargetFunction = FixedPointTarget | SinusoidTarget


@dataclass(frozen=True)
class StoppingCriteria:
    """Training stops at max_steps, or earlier once the max elementwise
    readout-weight change between consecutive updates falls to
    weight_delta_tol or below. A non-positive tolerance disables the
    weight-delta trigger."""

    max_steps: int = 800
    weight_delta_tol: float = 1e-5

    def __post_init__(self):
        if self.max_steps < 1:
            raise ParameterError(f"max_steps must be >= 1, got {self.max_steps}")


@dataclass
class TrainerState:
    """RLS state: inverse correlation estimate P and the readout weights."""

    p: np.ndarray           # (n, n)
    w_out: np.ndarray       # (n,)
    last_w_out: np.ndarray  # (n,)
    alpha: float


def lsq_fixed_point_update(w_out: np.ndarray, r: np.ndarray, a: float) -> np.ndarray:
    """Minimum-norm correction making the readout hit `a` at the rate vector r.

    Returns w_out + (a - w_out.r) r / (r.r); the smallest change (in L2)
    that solves the single equation w_out'.r = a.
    """
    rr = float(r @ r)
    if rr < 1e-12:
        raise SilentNetworkError(
            f"rate vector norm^2 = {rr:.3e}; network is silent, readout equation degenerate"
        )
    residual = a - float(w_out @ r)
    return w_out + (residual / rr) * r


def force_init(n: int, alpha: float = 1.0) -> TrainerState:
    """Fresh RLS state: P = I/alpha, zero readout."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if alpha <= 0:
        raise ParameterError(f"alpha must be > 0, got {alpha}")
    return TrainerState(
        p=np.eye(n) / alpha,
        w_out=np.zeros(n),
        last_w_out=np.zeros(n),
        alpha=alpha,
    )


def force_update(
    trainer: TrainerState, r: np.ndarray, target: float
) -> tuple[TrainerState, float]:
    """One RLS step toward w_out.r = target.

    k = P r, c = 1/(1 + r.k); P' = P - c k k^T; w_out' = w_out - c e k with
    the pre-update error e = w_out.r - target. Mutates `trainer` in place
    (P is large) and returns it along with e.
    """
    k = trainer.p @ r
    denom = 1.0 + float(r @ k)
    if not np.isfinite(denom) or denom <= 0:
        raise DivergenceError(-1, f"RLS gain denominator {denom}")
    c = 1.0 / denom
    e_pre = float(trainer.w_out @ r) - target
    trainer.p -= c * np.outer(k, k)
    trainer.last_w_out = trainer.w_out
    trainer.w_out = trainer.w_out - (c * e_pre) * k
    if not np.isfinite(trainer.w_out).all():
        raise DivergenceError(-1, "readout weights overflowed in RLS update")
    return trainer, e_pre


def check_converged(
    trainer: TrainerState, step: int, criteria: StoppingCriteria
) -> bool:
    """True once the step cap is hit or the readout weights stop moving."""
    if step >= criteria.max_steps:
        return True
    if criteria.weight_delta_tol <= 0:
        return False
    delta = float(np.max(np.abs(trainer.w_out - trainer.last_w_out)))
    return delta <= criteria.weight_delta_tol
