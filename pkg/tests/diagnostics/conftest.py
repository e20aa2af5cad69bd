"""Fixtures for the diagnostics tests."""

from __future__ import annotations

import pytest

from chb_simulator.constitutive import builtin_sources
from chb_simulator.data import SimulationState
from chb_simulator.grid import FaceField, ScalarField


@pytest.fixture
def zero_sources():
    return builtin_sources("zero", {}, ell=1.0)


@pytest.fixture
def rest_state(grid16) -> SimulationState:
    """phi = 0, sigma = 1 and no flow: a steady state of the source-free system with chi = 0."""
    return SimulationState(
        t=0.0,
        phi=ScalarField.zeros(grid16),
        mu=ScalarField.zeros(grid16),
        sigma=ScalarField.constant(grid16, 1.0),
        u=FaceField.zeros(grid16),
        pi=ScalarField.zeros(grid16),
    )
