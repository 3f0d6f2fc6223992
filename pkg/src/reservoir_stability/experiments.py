"""Experiment runners: fixed-point training, time-varying (RLS)
training with per-step or integrated unrolling, the unroll-interval sweep,
closed-loop spectrum validation, and post-training PCA.

Each run function takes a config plus a single seed and returns an in-memory
result; serialization to CSV/JSON artifacts lives in `artifacts`.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import ParameterError
from .network import (
    ReservoirParams,
    ReservoirState,
    UnrollMode,
    UnrollSchedule,
    WeightSet,
    init_network,
    solve_fixed_point,
    step,
)
from .pca import (
    RateHistory,
    correlation_matrix,
    fluctuation_score,
    pc_decomposition,
    project_trajectory,
)
from .spectra import (
    SpectrumSnapshot,
    eigenspectrum,
    jacobian_closed,
    snapshot,
    spectra_distance,
)
from .training import (
    FixedPointTarget,
    SinusoidTarget,
    StoppingCriteria,
    TargetFunction,
    check_converged,
    force_init,
    force_update,
    lsq_fixed_point_update,
)

EXPERIMENT_KINDS = (
    "fixed-point",
    "time-varying",
    "unroll-sweep",
    "closed-loop-validation",
    "pca",
)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    reservoir: ReservoirParams
    target: TargetFunction
    schedule: UnrollSchedule = UnrollSchedule(UnrollMode.PER_STEP)
    stopping: StoppingCriteria = StoppingCriteria()
    snapshot_cadence: int = 10
    seeds: tuple[int, ...] = (0,)
    output_dir: Optional[str] = None
    test_steps: Optional[int] = None      # None: same length as training
    rls_alpha: float = 1.0
    pca_window: int = 500
    pca_components: tuple[int, ...] = (1, 2, 3, 41, 42)
    sweep_intervals: tuple[int, ...] = (2, 10, 50, 100)

    def __post_init__(self):
        if self.experiment not in EXPERIMENT_KINDS:
            raise ParameterError(f"unknown experiment {self.experiment!r}")
        if self.snapshot_cadence < 1:
            raise ParameterError("snapshot_cadence must be >= 1")
        if not self.seeds:
            raise ParameterError("at least one seed is required")


def config_to_dict(config: ExperimentConfig) -> dict:
    """JSON-serializable echo of a config; round-trips via config_from_dict."""
    target = config.target
    if isinstance(target, FixedPointTarget):
        target_d = {"kind": "fixed-point", "amplitude": target.amplitude}
    else:
        target_d = {
            "kind": "sinusoid",
            "omega": target.omega,
            "time_scale": target.time_scale,
        }
    return {
        "experiment": config.experiment,
        "reservoir": dataclasses.asdict(config.reservoir),
        "target": target_d,
        "schedule": {
            "mode": config.schedule.mode.value,
            "interval": config.schedule.interval,
        },
        "stopping": dataclasses.asdict(config.stopping),
        "snapshot_cadence": config.snapshot_cadence,
        "seeds": list(config.seeds),
        "output_dir": config.output_dir,
        "test_steps": config.test_steps,
        "rls_alpha": config.rls_alpha,
        "pca_window": config.pca_window,
        "pca_components": list(config.pca_components),
        "sweep_intervals": list(config.sweep_intervals),
    }


def config_from_dict(d: dict) -> ExperimentConfig:
    target_d = d["target"]
    if target_d["kind"] == "fixed-point":
        target: TargetFunction = FixedPointTarget(target_d["amplitude"])
    else:
        target = SinusoidTarget(target_d["omega"], target_d["time_scale"])
    return ExperimentConfig(
        experiment=d["experiment"],
        reservoir=ReservoirParams(**d["reservoir"]),
        target=target,
        schedule=UnrollSchedule(UnrollMode(d["schedule"]["mode"]), d["schedule"]["interval"]),
        stopping=StoppingCriteria(**d["stopping"]),
        snapshot_cadence=d["snapshot_cadence"],
        seeds=tuple(d["seeds"]),
        output_dir=d["output_dir"],
        test_steps=d["test_steps"],
        rls_alpha=d["rls_alpha"],
        pca_window=d["pca_window"],
        pca_components=tuple(d["pca_components"]),
        sweep_intervals=tuple(d["sweep_intervals"]),
    )


@dataclass
class ExperimentResult:
    seed: int
    spectra: list[SpectrumSnapshot]
    trace: list[tuple[int, str, float, float]]  # (step, phase, z, target)
    converged_at: Optional[int]
    train_rmse: float
    test_rmse: float
    spectra_distance: Optional[float] = None
    # Objects kept for downstream reuse (validation, PCA); not serialized.
    weights: Optional[WeightSet] = field(default=None, repr=False)
    end_of_training: Optional[ReservoirState] = field(default=None, repr=False)
    prev_unroll_x: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def radius_timeline(self) -> list[tuple[int, float, float]]:
        return [(s.step, s.radius, s.max_real) for s in self.spectra]

    @property
    def radius_initial(self) -> float:
        return self.spectra[0].radius

    @property
    def radius_final(self) -> float:
        return self.spectra[-1].radius


def _rmse(pairs: list[tuple[float, float]]) -> float:
    if not pairs:
        return 0.0
    sq = [(z - f) ** 2 for z, f in pairs]
    return math.sqrt(sum(sq) / len(sq))


def _run_test_phase(
    weights: WeightSet,
    state: ReservoirState,
    target: TargetFunction,
    steps: int,
    dt: float,
    trace: list,
) -> list[tuple[float, float]]:
    """Frozen-readout generation phase with per-step feedback."""
    pairs = []
    for _ in range(steps):
        z_fb = float(weights.w_out @ state.r)
        state = step(state, weights, z_fb, dt)
        z = float(weights.w_out @ state.r)
        f = target(state.step)
        trace.append((state.step, "test", z, f))
        pairs.append((z, f))
    return pairs


def run_fixed_point(config: ExperimentConfig, seed: int) -> ExperimentResult:
    """Train the readout to a constant target with per-step unrolling.

    Each step advances the dynamics with the previous state's readout as
    feedback, then applies the exact-fit least-squares correction. Spectra
    are snapshotted at step 0, every `snapshot_cadence` steps, and at the
    final training step.
    """
    if not isinstance(config.target, FixedPointTarget):
        raise ParameterError("fixed-point experiment requires a FixedPointTarget")
    a = config.target.amplitude
    params = replace(config.reservoir, seed=seed)
    dt = params.dt
    weights, state = init_network(params)

    snaps = [snapshot(weights, state.x, state.x, 0)]
    trace: list[tuple[int, str, float, float]] = []
    train_pairs: list[tuple[float, float]] = []
    converged_at: Optional[int] = None
    tol = config.stopping.weight_delta_tol
    x_prev = state.x

    for t in range(1, config.stopping.max_steps + 1):
        z_unroll = float(weights.w_out @ state.r)
        x_prev = state.x
        state = step(state, weights, z_unroll, dt)
        new_w = lsq_fixed_point_update(weights.w_out, state.r, a)
        delta = float(np.max(np.abs(new_w - weights.w_out)))
        weights.w_out = new_w
        z = float(new_w @ state.r)
        trace.append((t, "train", z, a))
        train_pairs.append((z, a))
        if t % config.snapshot_cadence == 0:
            snaps.append(snapshot(weights, state.x, x_prev, t))
        if tol > 0 and delta <= tol:
            converged_at = t
            break

    if snaps[-1].step != state.step:
        snaps.append(snapshot(weights, state.x, x_prev, state.step))

    end_of_training = ReservoirState(
        x=state.x.copy(), r=state.r.copy(), step=state.step
    )
    test_len = config.test_steps if config.test_steps is not None else state.step
    test_pairs = _run_test_phase(weights, state, config.target, test_len, dt, trace)

    return ExperimentResult(
        seed=seed,
        spectra=snaps,
        trace=trace,
        converged_at=converged_at,
        train_rmse=_rmse(train_pairs),
        test_rmse=_rmse(test_pairs),
        weights=weights,
        end_of_training=end_of_training,
        prev_unroll_x=x_prev.copy(),
    )


def run_time_varying(config: ExperimentConfig, seed: int) -> ExperimentResult:
    """RLS training toward a time-varying target with unrolled feedback.

    The feedback value is refreshed from the readout every step (per-step
    mode) or at segment boundaries every `interval` steps (integrated mode);
    the readout weights are updated by RLS at every step. Spectra are taken
    at unrolling boundaries, with the final two boundaries always captured.
    """
    params = replace(config.reservoir, seed=seed)
    dt = params.dt
    k = config.schedule.feedback_interval
    weights, state = init_network(params)
    trainer = force_init(params.n, config.rls_alpha)

    snaps = [snapshot(weights, state.x, state.x, 0)]
    trace: list[tuple[int, str, float, float]] = []
    train_pairs: list[tuple[float, float]] = []
    converged_at: Optional[int] = None

    seg_start_x = state.x            # boundary state feeding the current segment
    z_unroll = float(trainer.w_out @ state.r)
    # Rolling buffer of the last two boundary snapshots' inputs, so the final
    # two spectra exist regardless of cadence.
    tail: list[tuple[int, np.ndarray, np.ndarray, np.ndarray]] = []
    boundary_index = 0

    for t in range(1, config.stopping.max_steps + 1):
        state = step(state, weights, z_unroll, dt)
        trainer, _ = force_update(trainer, state.r, config.target(t))
        z = float(trainer.w_out @ state.r)
        trace.append((t, "train", z, config.target(t)))
        train_pairs.append((z, config.target(t)))

        done = check_converged(trainer, t, config.stopping)
        if t % k == 0 or done:
            boundary_index += 1
            tail.append((t, state.x.copy(), seg_start_x.copy(), trainer.w_out.copy()))
            if len(tail) > 2:
                tail.pop(0)
            if boundary_index % config.snapshot_cadence == 0:
                weights.w_out = trainer.w_out.copy()
                snaps.append(snapshot(weights, state.x, seg_start_x, t))
            z_unroll = float(trainer.w_out @ state.r)
            seg_start_x = state.x
        if done:
            converged_at = t
            break

    weights.w_out = trainer.w_out.copy()
    taken = {s.step for s in snaps}
    for (t, x_cur, x_unr, w_out) in tail:
        if t not in taken:
            w = replace_readout(weights, w_out)
            snaps.append(snapshot(w, x_cur, x_unr, t))
    snaps.sort(key=lambda s: s.step)

    end_of_training = ReservoirState(
        x=state.x.copy(), r=state.r.copy(), step=state.step
    )
    prev_x = tail[-2][1] if len(tail) >= 2 else seg_start_x
    test_len = config.test_steps if config.test_steps is not None else state.step
    test_pairs = _run_test_phase(weights, state, config.target, test_len, dt, trace)

    return ExperimentResult(
        seed=seed,
        spectra=snaps,
        trace=trace,
        converged_at=converged_at,
        train_rmse=_rmse(train_pairs),
        test_rmse=_rmse(test_pairs),
        weights=weights,
        end_of_training=end_of_training,
        prev_unroll_x=np.asarray(prev_x).copy(),
    )


def replace_readout(weights: WeightSet, w_out: np.ndarray) -> WeightSet:
    """A view of `weights` with a different readout (shared fixed matrices)."""
    return WeightSet(w=weights.w, w_fb=weights.w_fb, w_out=w_out, w_in=weights.w_in)


def run_unroll_sweep(
    config: ExperimentConfig, seed: int
) -> list[tuple[int, ExperimentResult | Exception]]:
    """Run the time-varying experiment for each unroll interval.

    Per-interval failures are recorded in the returned list and the sweep
    continues.
    """
    out: list[tuple[int, ExperimentResult | Exception]] = []
    for k in config.sweep_intervals:
        try:
            mode = UnrollMode.PER_STEP if k == 1 else UnrollMode.INTEGRATED
            cfg_k = replace(config, schedule=UnrollSchedule(mode, k))
            out.append((k, run_time_varying(cfg_k, seed)))
        except Exception as exc:  # recorded, sweep continues
            out.append((k, exc))
    return out


def run_closed_loop_validation(
    config: ExperimentConfig, seed: int
) -> tuple[float, SpectrumSnapshot, SpectrumSnapshot, ExperimentResult]:
    """Compare the unrolled final-step spectrum with the closed-loop one.

    Trains a fixed-point run, then computes (i) the spectrum at the final
    unrolled training step and (ii) the spectrum of the closed-loop Jacobian
    at the self-consistent fixed point of the trained network, and returns
    their Hausdorff distance.
    """
    if not isinstance(config.target, FixedPointTarget):
        raise ParameterError("closed-loop validation requires a FixedPointTarget")
    result = run_fixed_point(config, seed)
    unrolled_snap = result.spectra[-1]

    weights = result.weights
    x_bar = solve_fixed_point(weights, config.target.amplitude)
    j = jacobian_closed(weights.w, weights.w_fb, weights.w_out, x_bar)
    lam = eigenspectrum(j)
    cl_snap = SpectrumSnapshot(
        step=-1,
        eigenvalues=lam,
        radius=float(np.max(np.abs(lam + 1.0))),
        max_real=float(np.max(lam.real)),
    )
    dist = spectra_distance(unrolled_snap, cl_snap)
    return dist, unrolled_snap, cl_snap, result


@dataclass
class PcaResult:
    seed: int
    fractions: np.ndarray
    components: tuple[int, ...]
    projections: dict[int, np.ndarray]
    scores: dict[int, float]
    step_offsets: np.ndarray
    training: ExperimentResult


def run_pca(config: ExperimentConfig, seed: int) -> PcaResult:
    """Post-training PCA of the firing-rate trajectory.

    Trains the fixed-point network, then runs it with a frozen readout for
    `pca_window` steps (per-step unrolled feedback) and decomposes the
    recorded rates.
    """
    if config.pca_window < 2:
        raise ParameterError("pca_window must be >= 2")
    train_cfg = replace(config, test_steps=0)
    result = run_fixed_point(train_cfg, seed)
    weights = result.weights
    state = result.end_of_training
    dt = config.reservoir.dt

    rows = np.empty((config.pca_window, weights.n))
    offsets = np.empty(config.pca_window, dtype=int)
    for i in range(config.pca_window):
        z_fb = float(weights.w_out @ state.r)
        state = step(state, weights, z_fb, dt)
        rows[i] = state.r
        offsets[i] = state.step

    history = RateHistory(rows=rows, step_offsets=offsets)
    decomposition = pc_decomposition(correlation_matrix(history))
    projections = {
        a: project_trajectory(history, decomposition, a)
        for a in config.pca_components
    }
    scores = {a: fluctuation_score(p) for a, p in projections.items()}
    return PcaResult(
        seed=seed,
        fractions=decomposition.fractions,
        components=tuple(config.pca_components),
        projections=projections,
        scores=scores,
        step_offsets=offsets,
        training=result,
    )
