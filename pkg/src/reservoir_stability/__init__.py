"""Feedback reservoir networks with eigenvalue-spectrum stability tracking."""

from .network import (
    ReservoirParams,
    ReservoirState,
    UnrollMode,
    UnrollSchedule,
    WeightSet,
    init_network,
    readout,
    run_unrolled_segment,
    solve_fixed_point,
    step,
)
from .pca import (
    PcDecomposition,
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
    jacobian_unrolled,
    phi_prime,
    snapshot,
    spectra_distance,
)
from .training import (
    FixedPointTarget,
    SinusoidTarget,
    StoppingCriteria,
    TargetFunction,
    TrainerState,
    check_converged,
    force_init,
    force_update,
    lsq_fixed_point_update,
)

__all__ = [
    "ReservoirParams", "ReservoirState", "UnrollMode", "UnrollSchedule",
    "WeightSet", "init_network", "readout", "run_unrolled_segment",
    "solve_fixed_point", "step",
    "PcDecomposition", "RateHistory", "correlation_matrix",
    "fluctuation_score", "pc_decomposition", "project_trajectory",
    "SpectrumSnapshot", "eigenspectrum", "jacobian_closed",
    "jacobian_unrolled", "phi_prime", "snapshot", "spectra_distance",
    "FixedPointTarget", "SinusoidTarget", "StoppingCriteria",
    "TargetFunction", "TrainerState", "check_converged", "force_init",
    "force_update", "lsq_fixed_point_update",
]

__version__ = "0.1.0"
