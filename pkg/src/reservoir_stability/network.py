"""Reservoir construction and discrete-time integration.

The network is a tanh rate reservoir with a linear readout fed back into the
recurrent pool. Dynamics are integrated with explicit Euler steps; the
feedback value for each step is supplied by the caller, which is what lets
the same `step` serve closed-loop, per-step-unrolled and integrated-unrolled
simulation modes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DivergenceError, FixedPointError, ParameterError


@dataclass(frozen=True)
class ReservoirParams:
    """Construction parameters for a reservoir network.

    n: neuron count; g: synaptic gain (recurrent weights have variance
    g^2/n); dt: Euler step; init_state_scale: std-dev of the random initial
    internal state; fb_scale: multiplier on the uniform [-1, 1] feedback
    weights; seed: RNG seed for weights and initial state.
    """

    n: int
    g: float
    dt: float = 1.0
    init_state_scale: float = 0.5
    fb_scale: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        if self.dt <= 0:
            raise ParameterError(f"dt must be > 0, got {self.dt}")
        if self.g < 0:
            raise ParameterError(f"g must be >= 0, got {self.g}")
        if self.init_state_scale < 0:
            raise ParameterError(
                f"init_state_scale must be >= 0, got {self.init_state_scale}"
            )


@dataclass
class WeightSet:
    """All synaptic weights of one network.

    Only w_out is mutated during training; w, w_fb and w_in stay fixed.
    w_in is retained for completeness but multiplies an input that is zero
    in every experiment here.
    """

    w: np.ndarray      # (n, n) recurrent
    w_fb: np.ndarray   # (n,) output->reservoir feedback
    w_out: np.ndarray  # (n,) linear readout
    w_in: np.ndarray   # (n,) input weights, unused (u = 0)

    @property
    def n(self) -> int:
        return self.w_fb.shape[0]


@dataclass
class ReservoirState:
    x: np.ndarray  # (n,) internal state
    r: np.ndarray  # (n,) firing rates, tanh(x)
    step: int = 0


class UnrollMode(Enum):
    CLOSED_LOOP = "closed-loop"
    PER_STEP = "per-step"
    INTEGRATED = "integrated"


@dataclass(frozen=True)
class UnrollSchedule:
    """How feedback is refreshed while stepping.

    CLOSED_LOOP feeds back the readout of the state being advanced.
    PER_STEP feeds back the readout of the previous state (one-step lag).
    INTEGRATED holds the readout of the last segment-boundary state constant
    for `interval` steps; interval=1 is identical to PER_STEP.
    """

    mode: UnrollMode
    interval: int = 1

    def __post_init__(self):
        if self.interval < 1:
            raise ParameterError(f"interval must be >= 1, got {self.interval}")
        if self.mode is not UnrollMode.INTEGRATED and self.interval != 1:
            raise ParameterError(f"interval must be 1 for {self.mode.value} mode")

    @property
    def feedback_interval(self) -> int:
        return self.interval if self.mode is UnrollMode.INTEGRATED else 1


def init_network(params: ReservoirParams) -> tuple[WeightSet, ReservoirState]:
    """Draw a fresh network and initial state from the params' seed.

    Recurrent weights are i.i.d. N(0, g^2/n); feedback weights are uniform
    on [-fb_scale, fb_scale]; the readout starts at zero so the initial
    dynamics are purely spontaneous.
    """
    rng = np.random.default_rng(params.seed)
    n = params.n
    w = rng.normal(0.0, params.g / np.sqrt(n), size=(n, n))
    w_fb = params.fb_scale * rng.uniform(-1.0, 1.0, size=n)
    w_in = rng.normal(0.0, 1.0 / np.sqrt(n), size=n)
    w_out = np.zeros(n)
    x = params.init_state_scale * rng.standard_normal(n)
    state = ReservoirState(x=x, r=np.tanh(x), step=0)
    return WeightSet(w=w, w_fb=w_fb, w_out=w_out, w_in=w_in), state


def readout(weights: WeightSet, r: np.ndarray) -> float:
    """Linear readout z = w_out . r."""
    r = np.asarray(r, dtype=float)
    if r.shape != weights.w_out.shape:
        raise ValueError(
            f"rate vector shape {r.shape} does not match readout {weights.w_out.shape}"
        )
    return float(weights.w_out @ r)


def step(
    state: ReservoirState, weights: WeightSet, z_fb: float, dt: float
) -> ReservoirState:
    """One Euler step x' = x + dt * (-x + W r + w_fb * z_fb).

    The caller chooses z_fb: the current readout for closed-loop stepping,
    or the readout of a previous/held state for unrolled stepping. The
    external input term is omitted (u = 0 throughout).
    """
    if not (np.isfinite(z_fb) and np.isfinite(state.x).all()):
        raise DivergenceError(state.step, "state or feedback not finite")
    x = state.x + dt * (-state.x + weights.w @ state.r + weights.w_fb * z_fb)
    if not np.isfinite(x).all():
        raise DivergenceError(state.step + 1, "state update overflowed")
    return ReservoirState(x=x, r=np.tanh(x), step=state.step + 1)


def run_unrolled_segment(
    state: ReservoirState,
    weights: WeightSet,
    z_unroll: float,
    steps: int,
    dt: float,
) -> tuple[ReservoirState, np.ndarray]:
    """Advance `steps` Euler steps with the feedback held at z_unroll.

    Returns the final state and the (steps, n) matrix of firing rates, one
    row per step, for later PCA.
    """
    if steps < 1:
        raise ParameterError(f"steps must be >= 1, got {steps}")
    rates = np.empty((steps, weights.n))
    for i in range(steps):
        state = step(state, weights, z_unroll, dt)
        rates[i] = state.r
    return state, rates


def solve_fixed_point(
    weights: WeightSet,
    a: float,
    max_iters: int = 2000,
    tol: float = 1e-10,
    relaxation: float = 0.5,
) -> np.ndarray:
    """Solve x = W tanh(x) + w_fb * a by damped fixed-point iteration.

    Iterates x <- (1 - relaxation) x + relaxation (W tanh(x) + w_fb a)
    from x0 = w_fb * a until the max-norm residual drops below tol.
    """
    if not 0 < relaxation <= 1:
        raise ParameterError(f"relaxation must be in (0, 1], got {relaxation}")
    x = weights.w_fb * a
    residual = np.inf
    for _ in range(max_iters):
        image = weights.w @ np.tanh(x) + weights.w_fb * a
        residual = float(np.max(np.abs(x - image)))
        if residual <= tol:
            return x
        x = (1.0 - relaxation) * x + relaxation * image
    raise FixedPointError(residual, max_iters)
