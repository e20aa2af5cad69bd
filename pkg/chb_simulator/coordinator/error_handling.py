"""
Error handling and recovery strategies for the step loop.

A failed step is retried from the same state with a halved time step as
long as the failure is numerical: Newton nonconvergence, a violated CFL
guard or a Krylov solve that stalled. Invariant and configuration errors
end the run immediately with their own exit codes.
"""

from __future__ import annotations

from chb_simulator.const import (
    EXIT_FAILURE,
    EXIT_INVARIANT,
    EXIT_NUMERIC,
    EXIT_VALIDATION,
    LOGGER,
    MAX_DT_HALVINGS,
)
from chb_simulator.exceptions import (
    ChbConfigurationError,
    ChbDomainError,
    ChbInvariantError,
    ChbNumericError,
    ChbSolverError,
    ChbStepError,
)

RETRYABLE_ERRORS: tuple[type[Exception], ...] = (ChbStepError, ChbSolverError)


def should_retry_step(exception: Exception, attempt: int, max_halvings: int = MAX_DT_HALVINGS) -> bool:
    """
    Determine if a failed step should be retried with a smaller dt.

    Args:
        exception: The exception raised by the step.
        attempt: Number of halvings already applied (0-indexed).
        max_halvings: Cap on the number of halvings.

    Returns:
        True if the step should be retried, False otherwise.

    Example:
        >>> should_retry_step(ChbStepError("Newton did not converge"), 0)
        True
        >>> should_retry_step(ChbInvariantError("sigma < 0"), 0)
        False

    """
    return isinstance(exception, RETRYABLE_ERRORS) and attempt < max_halvings


def calculate_retry_dt(dt: float, attempt: int) -> float:
    """
    Time step for the given retry attempt.

    Example:
        >>> calculate_retry_dt(0.1, 0)
        0.05
        >>> calculate_retry_dt(0.1, 2)
        0.0125

    """
    return dt / 2 ** (attempt + 1)


def exit_code_for(exception: BaseException) -> int:
    """Map the exception that ended a run to its exit code."""
    if isinstance(exception, ChbConfigurationError):
        return EXIT_VALIDATION
    if isinstance(exception, ChbInvariantError | ChbDomainError):
        return EXIT_INVARIANT
    if isinstance(exception, ChbNumericError):
        return EXIT_NUMERIC
    return EXIT_FAILURE


def log_step_failure(exception: Exception, attempt: int, total_attempts: int, t: float) -> None:
    """
    Log step failures with severity depending on whether a retry follows.

    Args:
        exception: The exception that caused the failure.
        attempt: The current attempt number (0-indexed).
        total_attempts: The total number of attempts that will be made.
        t: Time level the step started from.

    """
    if attempt < total_attempts - 1:
        LOGGER.warning(
            "Step from t=%.6g failed (attempt %d/%d), halving dt: %s",
            t,
            attempt + 1,
            total_attempts,
            exception,
        )
    else:
        LOGGER.error(
            "Step from t=%.6g failed after %d attempts: %s",
            t,
            total_attempts,
            exception,
        )


__all__ = [
    "RETRYABLE_ERRORS",
    "calculate_retry_dt",
    "exit_code_for",
    "log_step_failure",
    "should_retry_step",
]
