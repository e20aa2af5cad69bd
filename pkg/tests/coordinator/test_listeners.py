"""Tests for step listeners."""

from __future__ import annotations

import logging

import pytest

from chb_simulator.coordinator import SimulationCoordinator
from chb_simulator.coordinator.listeners import create_step_callback, track_step_performance

pytestmark = pytest.mark.unit


def test_callback_errors_are_logged(sim_config, caplog):
    coordinator = SimulationCoordinator(sim_config)
    state = coordinator.initial_state()
    result = coordinator.run()
    record = result.records[0]

    def broken(state, record):
        msg = "boom"
        raise ValueError(msg)

    wrapped = create_step_callback("broken", broken)
    with caplog.at_level(logging.ERROR, logger="chb_simulator"):
        wrapped(state, record)
    assert "Error in step listener broken at step 0" in caplog.text


def test_callback_passes_arguments_through(sim_config):
    coordinator = SimulationCoordinator(sim_config)
    result = coordinator.run()
    seen = []
    wrapped = create_step_callback("collect", lambda state, record: seen.append((state, record.step)))
    wrapped(result.final_state, result.records[-1])
    assert seen == [(result.final_state, sim_config.steps)]


@pytest.mark.parametrize(
    ("duration", "level"),
    [(0.01, logging.DEBUG), (6.0, logging.INFO), (31.0, logging.WARNING)],
)
def test_track_step_performance_levels(caplog, duration, level):
    caplog.set_level(logging.DEBUG, logger="chb_simulator")
    track_step_performance(4, duration)
    assert [record.levelno for record in caplog.records] == [level]
