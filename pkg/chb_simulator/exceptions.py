"""
Exception hierarchy for chb_simulator.

Every error raised on purpose by the simulator derives from ChbError so the
command line can map failures onto exit codes:

- ChbConfigurationError: assumption validators or preconditions (exit 2)
- ChbInvariantError: a structural invariant broke during a run (exit 3)
- ChbNumericError, ChbSolverError, ChbStepError: numerical failures (exit 4)

ChbStepError is the only recoverable failure; the coordinator answers it by
halving the time step.
"""

from __future__ import annotations

from collections.abc import Sequence


class ChbError(Exception):
    """Base exception for the simulator."""


class ChbConfigurationError(ChbError):
    """Exception to indicate an invalid configuration or violated precondition."""


class ChbDomainError(ChbError, ValueError):
    """Exception to indicate an argument outside a constitutive function's domain."""

    def __init__(self, message: str, value: float) -> None:
        """
        Initialize the error with the offending value.

        Args:
            message: Human readable description.
            value: The first argument found outside the domain.

        """
        super().__init__(message)
        self.value = value


class ChbNumericError(ChbError):
    """Exception to indicate overflow, quadrature or resolvent failure."""


class ChbSolverError(ChbNumericError):
    """Exception to indicate a Krylov solve that did not reach its tolerance."""

    def __init__(self, message: str, residual: float) -> None:
        """Initialize the error with the final residual."""
        super().__init__(message)
        self.residual = residual


class ChbStepError(ChbNumericError):
    """Exception to indicate a failed time step that may succeed with a smaller dt."""

    def __init__(self, message: str, residual_history: Sequence[float] = ()) -> None:
        """
        Initialize the error with the residual history of the failed solve.

        Args:
            message: Human readable description.
            residual_history: Residual norms of the Newton iterations, if any.

        """
        super().__init__(message)
        self.residual_history = list(residual_history)


class ChbInvariantError(ChbError):
    """Exception to indicate a violated structural invariant. Fatal."""


__all__ = [
    "ChbConfigurationError",
    "ChbDomainError",
    "ChbError",
    "ChbInvariantError",
    "ChbNumericError",
    "ChbSolverError",
    "ChbStepError",
]
