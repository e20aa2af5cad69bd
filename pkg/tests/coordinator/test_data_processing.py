"""Tests for the step loop helpers."""

from __future__ import annotations

from dataclasses import replace

from numpy.testing import assert_allclose
import pytest

from chb_simulator.coordinator.data_processing import (
    SNAPSHOT_FIELDS,
    build_initial_state,
    flow_from_fields,
    is_due,
    mean_phase_source,
    snapshot_path,
    write_snapshots,
)
from chb_simulator.grid import ScalarField, read_field

pytestmark = pytest.mark.unit


@pytest.mark.parametrize(
    ("step", "cadence", "final", "expected"),
    [
        (0, 5, False, True),
        (5, 5, False, True),
        (6, 5, False, False),
        (7, 5, True, True),
        (3, 0, False, False),
        (3, 0, True, True),
    ],
)
def test_is_due(step, cadence, final, expected):
    assert is_due(step, cadence, final=final) is expected


def test_snapshot_path(tmp_path):
    assert snapshot_path(tmp_path, "phi", 12, binary=False) == tmp_path / "snapshots" / "phi_000012.txt"
    assert snapshot_path(tmp_path, "sigma", 3, binary=True).name == "sigma_000003.bin"


def test_disabled_flow_gives_zero_fields(sim_config):
    state = build_initial_state(sim_config)
    u, pi = flow_from_fields(sim_config, state.phi, state.mu, state.sigma)
    assert u.max_abs() == 0.0
    assert pi.max_abs() == 0.0


def test_initial_state_carries_the_initial_fields(sim_config):
    state = build_initial_state(sim_config)
    assert state.step == 0
    assert state.t == 0.0
    assert state.phi is sim_config.phi0
    assert state.sigma is sim_config.sigma0
    assert state.mu.grid == sim_config.grid


def test_mean_phase_source_without_sources(sim_config):
    state = build_initial_state(sim_config)
    assert mean_phase_source(state, sim_config.sources, None, 0.1) == 0.0


def test_write_snapshots(sim_config, tmp_path):
    state = build_initial_state(replace(sim_config, sigma0=ScalarField.constant(sim_config.grid, 2.0)))
    paths = write_snapshots(tmp_path, state, binary=True)
    assert [path.name for path in paths] == [f"{name}_000000.bin" for name in SNAPSHOT_FIELDS]
    snapshot = read_field(paths[2])
    assert snapshot.name == "sigma"
    assert_allclose(snapshot.field.values, 2.0)
