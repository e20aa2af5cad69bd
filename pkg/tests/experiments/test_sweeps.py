"""Tests for the parameter sweeps."""

from __future__ import annotations

from dataclasses import replace
import math

import pytest

from chb_simulator.exceptions import ChbConfigurationError
from chb_simulator.experiments import experiment_darcy_sweep, experiment_n_sweep, experiment_p_sweep
from chb_simulator.experiments.darcy_sweep import DARCY_COLUMNS

pytestmark = pytest.mark.integration


def test_darcy_gap_shrinks_with_the_viscosity(flow_config, tmp_path):
    table = experiment_darcy_sweep(flow_config, [0.1, 0.01, 0.0], tmp_path)
    assert table.complete
    assert table.columns == DARCY_COLUMNS
    assert table.column("epsilon") == [0.1, 0.01]
    gaps = table.column("u_gap_L2Q")
    assert all(math.isfinite(gap) and gap > 0 for gap in gaps)
    assert table.verdicts["u_gap_monotone"] is True
    assert table.exit_code == 0
    assert (tmp_path / "eps_0_darcy" / "summary.json").is_file()


def test_darcy_only_list_gives_an_empty_table(flow_config):
    table = experiment_darcy_sweep(flow_config, [0.0])
    assert table.complete
    assert table.rows == []
    assert table.verdicts["u_gap_monotone"] is None


def test_darcy_list_must_decrease(flow_config):
    with pytest.raises(ValueError, match="strictly decreasing"):
        experiment_darcy_sweep(flow_config, [0.01, 0.1])


def test_n_sweep_rows(sim_config):
    table = experiment_n_sweep(sim_config, ["exact", 8, 2, 4])
    assert table.complete
    assert table.column("n") == [2, 4, 8, "exact"]
    assert table.rows[-1]["h2_over_sqrt_n"] is None
    assert all(row["h2_over_sqrt_n"] > 0 for row in table.rows[:-1])
    assert table.verdicts["uniform_sup_bound"] is True
    assert table.verdicts["energy_cauchy"] is not None
    assert all(row["sup_abs_phi"] < 1.0 for row in table.rows)


def test_n_sweep_with_widely_spaced_indices(sim_config):
    assert (sim_config.grid.nx, sim_config.grid.ny) == (8, 8)
    table = experiment_n_sweep(sim_config, [64, 4, 16, "exact"])
    assert table.complete
    assert table.column("n") == [4, 16, 64, "exact"]
    assert table.verdicts["uniform_sup_bound"] is True
    assert table.verdicts["energy_cauchy"] is True
    ratios = table.column("h2_over_sqrt_n")[:-1]
    assert ratios[0] > ratios[1] > ratios[2] > 0
    assert all(row["sup_abs_phi"] < 1.0 for row in table.rows)


def test_n_sweep_needs_an_integer_index(sim_config):
    with pytest.raises(ChbConfigurationError):
        experiment_n_sweep(sim_config, ["exact"])


def test_p_sweep_rows(sim_config):
    config = sim_config.with_model(chi=0.5)
    table = experiment_p_sweep(config, [1.05, 1.5, 2.0])
    assert table.complete
    assert table.column("p") == [1.05, 1.5, 2.0]
    assert table.column("three_d_range") == [False, True, True]
    assert all(value > 0 for value in table.column("min_sigma"))
    last = table.rows[-1]
    assert last["S"] == pytest.approx(2.0)
    assert last["R"] == pytest.approx(4.0)


def test_failed_member_is_reported(sim_config):
    config = replace(sim_config, numerics=replace(sim_config.numerics, newton_max_iter=1, newton_tol=1e-300))
    table = experiment_p_sweep(config, [2.0])
    assert not table.complete
    assert table.exit_code == 4
    assert table.rows == []
