"""Tests for the retry and exit code helpers."""

from __future__ import annotations

import logging

import pytest

from chb_simulator.const import EXIT_FAILURE, EXIT_INVARIANT, EXIT_NUMERIC, EXIT_VALIDATION
from chb_simulator.coordinator.error_handling import (
    calculate_retry_dt,
    exit_code_for,
    log_step_failure,
    should_retry_step,
)
from chb_simulator.exceptions import (
    ChbConfigurationError,
    ChbDomainError,
    ChbInvariantError,
    ChbNumericError,
    ChbSolverError,
    ChbStepError,
)

pytestmark = pytest.mark.unit


@pytest.mark.parametrize(
    ("error", "attempt", "expected"),
    [
        (ChbStepError("newton"), 0, True),
        (ChbStepError("newton"), 7, True),
        (ChbStepError("newton"), 8, False),
        (ChbSolverError("gmres", 1e-3), 2, True),
        (ChbNumericError("overflow"), 0, False),
        (ChbInvariantError("sigma < 0"), 0, False),
        (ChbConfigurationError("bad"), 0, False),
        (RuntimeError("bug"), 0, False),
    ],
)
def test_should_retry_step(error, attempt, expected):
    assert should_retry_step(error, attempt, max_halvings=8) is expected


def test_retry_dt_halves_per_attempt():
    assert [calculate_retry_dt(1.0, attempt) for attempt in range(4)] == [0.5, 0.25, 0.125, 0.0625]


@pytest.mark.parametrize(
    ("error", "code"),
    [
        (ChbConfigurationError("bad"), EXIT_VALIDATION),
        (ChbInvariantError("sigma < 0"), EXIT_INVARIANT),
        (ChbDomainError("phi outside (-1, 1)", 1.2), EXIT_INVARIANT),
        (ChbStepError("newton"), EXIT_NUMERIC),
        (ChbSolverError("gmres", 1.0), EXIT_NUMERIC),
        (ChbNumericError("overflow"), EXIT_NUMERIC),
        (RuntimeError("bug"), EXIT_FAILURE),
    ],
)
def test_exit_code_for(error, code):
    assert exit_code_for(error) == code


def test_log_step_failure_levels(caplog):
    caplog.set_level(logging.DEBUG, logger="chb_simulator")
    log_step_failure(ChbStepError("newton"), 0, 3, 0.5)
    log_step_failure(ChbStepError("newton"), 2, 3, 0.5)

    levels = [record.levelno for record in caplog.records]
    assert levels == [logging.WARNING, logging.ERROR]
    assert "halving dt" in caplog.records[0].getMessage()
    assert "after 3 attempts" in caplog.records[1].getMessage()
