"""Command-line entry point for running experiments and writing artifacts.

    reservoir-stability fixed-point --n 1000 --g 0.9 --seeds 0,1,2 --out-dir runs
    reservoir-stability time-varying --g 1.5 --out-dir runs
    reservoir-stability unroll-sweep --intervals 2,10,50,100 --out-dir runs
    reservoir-stability validate-closed-loop --g 0.9 --out-dir runs
    reservoir-stability pca --g 0.9 --pca-window 500 --out-dir runs

A `--config FILE` of `key = value` lines (keys matching the long flag names,
dashes or underscores) overrides any flag.
"""

from __future__ import annotations

import argparse
import sys

import os
from dataclasses import replace

from .artifacts import write_csv, write_pca, write_result, write_spectrum
from .errors import DivergenceError, FixedPointError, ParameterError
from .experiments import (
    ExperimentConfig,
    config_to_dict,
    run_closed_loop_validation,
    run_fixed_point,
    run_pca,
    run_time_varying,
    run_unroll_sweep,
)
from .network import ReservoirParams, UnrollMode, UnrollSchedule
from .training import FixedPointTarget, SinusoidTarget, StoppingCriteria


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace(",", " ").split())


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=1000, help="neuron count")
    p.add_argument("--g", type=float, default=0.9, help="synaptic gain")
    p.add_argument("--dt", type=float, default=None,
                   help="Euler step (default 0.1 for time-varying runs, else 1.0)")
    p.add_argument("--init-state-scale", type=float, default=0.5)
    p.add_argument("--fb-scale", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=None, help="single seed")
    p.add_argument("--seeds", type=_parse_int_list, default=None, help="comma-separated seeds")
    p.add_argument("--steps", type=int, default=None, help="max training steps")
    p.add_argument("--weight-delta-tol", type=float, default=None)
    p.add_argument("--unroll-interval", type=int, default=1)
    p.add_argument("--target-amplitude", type=float, default=1.5)
    p.add_argument("--omega", type=float, default=SinusoidTarget().omega)
    p.add_argument("--time-scale", type=float, default=SinusoidTarget().time_scale)
    p.add_argument("--snapshot-cadence", type=int, default=10)
    p.add_argument("--test-steps", type=int, default=None)
    p.add_argument("--rls-alpha", type=float, default=1.0)
    p.add_argument("--pca-window", type=int, default=500)
    p.add_argument("--pca-components", type=_parse_int_list, default=(1, 2, 3, 41, 42))
    p.add_argument("--intervals", type=_parse_int_list, default=(2, 10, 50, 100),
                   help="unroll intervals for the sweep")
    p.add_argument("--out-dir", default="runs")
    p.add_argument("--config", default=None, help="key=value file overriding flags")


def _apply_config_file(args: argparse.Namespace, path: str) -> None:
    converters = {
        "n": int, "seed": int, "steps": int, "unroll_interval": int,
        "snapshot_cadence": int, "test_steps": int, "pca_window": int,
        "g": float, "dt": float, "init_state_scale": float, "fb_scale": float,
        "weight_delta_tol": float, "target_amplitude": float, "omega": float,
        "time_scale": float, "rls_alpha": float,
        "seeds": _parse_int_list, "pca_components": _parse_int_list,
        "intervals": _parse_int_list,
    }
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParameterError(f"{path}:{lineno}: expected key = value")
            key, value = (tok.strip() for tok in line.split("=", 1))
            key = key.replace("-", "_")
            if not hasattr(args, key):
                raise ParameterError(f"{path}:{lineno}: unknown key {key!r}")
            setattr(args, key, converters.get(key, str)(value))


def _build_config(args: argparse.Namespace, experiment: str) -> ExperimentConfig:
    seeds = args.seeds if args.seeds else ((args.seed,) if args.seed is not None else (0,))
    time_varying = experiment in ("time-varying", "unroll-sweep")
    dt = args.dt if args.dt is not None else (0.1 if time_varying else 1.0)
    reservoir = ReservoirParams(
        n=args.n, g=args.g, dt=dt,
        init_state_scale=args.init_state_scale,
        fb_scale=args.fb_scale, seed=seeds[0],
    )
    if time_varying:
        target = SinusoidTarget(omega=args.omega, time_scale=args.time_scale)
        max_steps = args.steps if args.steps is not None else 20000
        delta_tol = args.weight_delta_tol if args.weight_delta_tol is not None else 0.0
    else:
        target = FixedPointTarget(args.target_amplitude)
        max_steps = args.steps if args.steps is not None else 800
        delta_tol = args.weight_delta_tol if args.weight_delta_tol is not None else 1e-5
    k = args.unroll_interval
    schedule = UnrollSchedule(
        UnrollMode.INTEGRATED if k > 1 else UnrollMode.PER_STEP, k
    )
    return ExperimentConfig(
        experiment=experiment,
        reservoir=reservoir,
        target=target,
        schedule=schedule,
        stopping=StoppingCriteria(max_steps=max_steps, weight_delta_tol=delta_tol),
        snapshot_cadence=args.snapshot_cadence,
        seeds=tuple(seeds),
        output_dir=args.out_dir,
        test_steps=args.test_steps,
        rls_alpha=args.rls_alpha,
        pca_window=args.pca_window,
        pca_components=tuple(args.pca_components),
        sweep_intervals=tuple(args.intervals),
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="reservoir-stability",
        description="Reservoir training experiments with eigenvalue-spectrum tracking",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("fixed-point", "time-varying", "unroll-sweep", "validate-closed-loop", "pca"):
        _add_common_flags(sub.add_parser(name))
    args = parser.parse_args(argv)
    experiment = {
        "validate-closed-loop": "closed-loop-validation",
    }.get(args.command, args.command)
    try:
        if args.config:
            _apply_config_file(args, args.config)
        config = _build_config(args, experiment)
        for seed in config.seeds:
            _run_one(config, seed)
    except (ParameterError, DivergenceError, FixedPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _run_one(config: ExperimentConfig, seed: int) -> None:
    kind = config.experiment
    if kind == "fixed-point":
        result = run_fixed_point(config, seed)
        directory = write_result(config, result)
        print(f"{kind} seed={seed}: converged_at={result.converged_at} "
              f"radius {result.radius_initial:.4f} -> {result.radius_final:.4f} "
              f"-> {directory}")
    elif kind == "time-varying":
        result = run_time_varying(config, seed)
        directory = write_result(config, result)
        print(f"{kind} seed={seed}: train_rmse={result.train_rmse:.4f} "
              f"test_rmse={result.test_rmse:.4f} -> {directory}")
    elif kind == "unroll-sweep":
        rows = []
        for k, res in run_unroll_sweep(config, seed):
            if isinstance(res, Exception):
                print(f"unroll-sweep seed={seed} k={k}: failed: {res}", file=sys.stderr)
                rows.append((k, float("nan"), float("nan"), repr(res)))
                continue
            mode = UnrollMode.PER_STEP if k == 1 else UnrollMode.INTEGRATED
            cfg_k = replace(config, schedule=UnrollSchedule(mode, k))
            write_result(cfg_k, res, extra_summary={"unroll_interval": k})
            rows.append((k, res.train_rmse, res.test_rmse, ""))
            print(f"unroll-sweep seed={seed} k={k}: train_rmse={res.train_rmse:.4f} "
                  f"test_rmse={res.test_rmse:.4f}")
        os.makedirs(config.output_dir, exist_ok=True)
        write_csv(
            os.path.join(config.output_dir,
                         f"unroll_sweep_g{config.reservoir.g:g}_seed{seed}.csv"),
            ["interval", "train_rmse", "test_rmse", "error"],
            rows,
        )
    elif kind == "closed-loop-validation":
        dist, unrolled, closed, result = run_closed_loop_validation(config, seed)
        result.spectra_distance = dist
        directory = write_result(config, result)
        write_spectrum(directory, unrolled, label=f"unrolled_{unrolled.step}")
        write_spectrum(directory, closed, label="closed_loop")
        print(f"{kind} seed={seed}: hausdorff={dist:.5f} -> {directory}")
    elif kind == "pca":
        result = run_pca(config, seed)
        directory = write_pca(config, result)
        scores = ", ".join(f"PC{a}={result.scores[a]:.4f}" for a in result.components)
        print(f"{kind} seed={seed}: {scores} -> {directory}")
    else:
        raise ParameterError(f"unknown experiment {kind!r}")


if __name__ == "__main__":
    raise SystemExit(main())
