"""Shared fixtures: paths into the checked-in golden artifact corpus.

The golden directory was produced by the reservoir-stability CLI and is
treated as read-only; tests assert the renderer never modifies it.
"""

import os

import pytest

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


@pytest.fixture(scope="session")
def golden_dir() -> str:
    return GOLDEN


@pytest.fixture(scope="session")
def spectrum_csv(golden_dir: str) -> str:
    return os.path.join(golden_dir, "fixed-point_g0.9_seed0", "spectra_0.csv")


@pytest.fixture(scope="session")
def spectrum_csv_final(golden_dir: str) -> str:
    return os.path.join(golden_dir, "fixed-point_g0.9_seed0", "spectra_22.csv")


@pytest.fixture(scope="session")
def trace_csv(golden_dir: str) -> str:
    return os.path.join(golden_dir, "time-varying_g1.2_seed0", "trace.csv")


@pytest.fixture(scope="session")
def sweep_traces(golden_dir: str) -> list[str]:
    return [
        os.path.join(golden_dir, "unroll-sweep_g1.2_seed0_k1", "trace.csv"),
        os.path.join(golden_dir, "unroll-sweep_g1.2_seed0_k10", "trace.csv"),
    ]


@pytest.fixture(scope="session")
def pc_csvs(golden_dir: str) -> list[str]:
    run = os.path.join(golden_dir, "pca_g0.9_seed0")
    return [os.path.join(run, f"pc_{a}.csv") for a in (1, 2, 3)]
