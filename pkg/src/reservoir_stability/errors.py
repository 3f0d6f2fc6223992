"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid construction parameter (n < 1, dt <= 0, ...)."""


class DivergenceError(RuntimeError):
    """Non-finite values appeared in the simulated state.

    Carries the step index at which the divergence was detected.
    """

    def __init__(self, step: int, message: str = ""):
        self.step = step
        detail = f" ({message})" if message else ""
        super().__init__(f"non-finite values at step {step}{detail}")


class FixedPointError(RuntimeError):
    """Damped fixed-point iteration failed to converge.

    Carries the final max-norm residual.
    """

    def __init__(self, residual: float, max_iters: int):
        self.residual = residual
        super().__init__(
            f"fixed-point iteration did not converge after {max_iters} "
            f"iterations (residual {residual:.3e})"
        )


class SilentNetworkError(RuntimeError):
    """Rate vector has (near-)zero norm; the readout equation is degenerate."""


class EigensolverError(RuntimeError):
    """Dense eigendecomposition failed to converge."""


class InsufficientHistoryError(ValueError):
    """Rate history is too short for the requested statistic."""
