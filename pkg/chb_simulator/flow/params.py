"""Parameters of the flow solves."""

from __future__ import annotations

from dataclasses import dataclass

from chb_simulator.const import DEFAULT_KRYLOV_MAX_ITER, DEFAULT_KRYLOV_TOL
from chb_simulator.exceptions import ChbConfigurationError

PRESSURE_GAUGE_ZERO_MEAN = "zero_mean"


@dataclass(frozen=True)
class FlowSolveParams:
    """
    Settings shared by darcy_solve and brinkman_solve.

    Attributes:
        epsilon: Brinkman viscosity; 0 selects the Darcy limit.
        krylov_tol: Absolute tolerance on div u, scaled by max(1, |div force|).
        krylov_max_iter: Conjugate gradient iteration cap.
        pressure_sign: +1 for u = grad pi + force, -1 for the conventional sign.
        pressure_gauge: Only zero_mean is supported.

    """

    epsilon: float = 0.0
    krylov_tol: float = DEFAULT_KRYLOV_TOL
    krylov_max_iter: int = DEFAULT_KRYLOV_MAX_ITER
    pressure_sign: float = 1.0
    pressure_gauge: str = PRESSURE_GAUGE_ZERO_MEAN

    def __post_init__(self) -> None:
        """Validate the settings."""
        if self.epsilon < 0:
            msg = f"epsilon must be nonnegative, got {self.epsilon}"
            raise ChbConfigurationError(msg)
        if self.krylov_tol <= 0 or self.krylov_max_iter < 1:
            msg = "krylov_tol must be positive and krylov_max_iter >= 1"
            raise ChbConfigurationError(msg)
        if self.pressure_sign not in (1.0, -1.0):
            msg = f"pressure_sign must be +1 or -1, got {self.pressure_sign}"
            raise ChbConfigurationError(msg)
        if self.pressure_gauge != PRESSURE_GAUGE_ZERO_MEAN:
            msg = f"Unsupported pressure gauge {self.pressure_gauge!r}"
            raise ChbConfigurationError(msg)
