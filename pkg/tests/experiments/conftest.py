"""Fixtures for the experiment tests."""

from __future__ import annotations

from dataclasses import replace

import pytest

from chb_simulator.data import SimConfig


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    """Sweep members run in the test process."""
    monkeypatch.setenv("CHB_THREADS", "1")


@pytest.fixture
def flow_config(sim_config) -> SimConfig:
    return replace(sim_config, flow_enabled=True)
