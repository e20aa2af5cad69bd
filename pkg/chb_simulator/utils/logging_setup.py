"""Colored console logging for the command line."""

from __future__ import annotations

import logging

import colorlog

from chb_simulator.const import LOGGER

LOG_FORMAT = "%(log_color)s%(asctime)s.%(msecs)03d %(levelname)-8s %(name)s: %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
LOG_COLORS = {
    "DEBUG": "cyan",
    "INFO": "green",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "bold_red",
}


def setup_logging(*, verbose: bool = False) -> logging.Handler:
    """
    Attach a colored stderr handler to the package logger.

    Calling it again replaces the handler installed before.

    Args:
        verbose: Log at debug level, which also enables the Newton
            monotonicity check of the phase step.

    Returns:
        The installed handler.

    """
    handler = colorlog.StreamHandler()
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT, datefmt=LOG_DATE_FORMAT, log_colors=LOG_COLORS))
    handler.set_name(LOGGER.name)
    for existing in list(LOGGER.handlers):
        if existing.get_name() == LOGGER.name:
            LOGGER.removeHandler(existing)
    LOGGER.addHandler(handler)
    LOGGER.setLevel(logging.DEBUG if verbose else logging.INFO)
    return handler


__all__ = ["LOG_FORMAT", "setup_logging"]
