"""
Step listeners of the coordinator.

Listeners are called after every accepted step with the new state and its
diagnostics record. A failing listener is logged and never stops the run.
"""

from __future__ import annotations

from collections.abc import Callable
from typing import TYPE_CHECKING

from chb_simulator.const import LOGGER

if TYPE_CHECKING:
    from chb_simulator.data import SimulationState
    from chb_simulator.diagnostics import DiagnosticsRecord

StepListener = Callable[["SimulationState", "DiagnosticsRecord"], None]

_SLOW_STEP = 5.0
_VERY_SLOW_STEP = 30.0


def create_step_callback(name: str, callback: StepListener) -> StepListener:
    """
    Wrap a listener so that its errors are logged instead of raised.

    Args:
        name: Label used in log messages.
        callback: The listener to wrap.

    Returns:
        The wrapped listener.

    """

    def wrapped_callback(state: SimulationState, record: DiagnosticsRecord) -> None:
        try:
            callback(state, record)
        except Exception:  # noqa: BLE001 - a listener must not end the run
            LOGGER.exception("Error in step listener %s at step %d", name, record.step)

    return wrapped_callback


def track_step_performance(step: int, duration: float) -> None:
    """Log the wall time of one step, louder when it is slow."""
    if duration > _VERY_SLOW_STEP:
        LOGGER.warning("Step %d took %.2f seconds (very slow)", step, duration)
    elif duration > _SLOW_STEP:
        LOGGER.info("Step %d took %.2f seconds (slow)", step, duration)
    else:
        LOGGER.debug("Step %d took %.3f seconds", step, duration)


__all__ = ["StepListener", "create_step_callback", "track_step_performance"]
