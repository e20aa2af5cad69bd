"""Tests for the manufactured-solution study."""

from __future__ import annotations

from numpy.testing import assert_allclose
import pytest

from chb_simulator.data import AdvectionScheme, MobilityFaceRule
from chb_simulator.exceptions import ChbConfigurationError
from chb_simulator.experiments import ManufacturedSolution, exact_fields, experiment_mms, manufactured_forcing, mms_config
from chb_simulator.experiments.mms import MIN_SCALAR_ORDER
from chb_simulator.grid import GridSpec, mean

pytestmark = pytest.mark.integration


def _solution(**changes) -> ManufacturedSolution:
    values = {
        "amplitude": 1.0,
        "lx": 1.0,
        "ly": 1.0,
        "chi": 0.0,
        "ell": 1.0,
        "lam": 0.0,
        "p": 2.0,
        "epsilon": 0.1,
        "pressure_sign": 1.0,
        "flow": True,
    }
    values.update(changes)
    return ManufacturedSolution(**values)


def test_exact_fields_respect_the_boundary_conditions():
    grid = GridSpec(16, 16)
    phi, sigma, u = exact_fields(_solution(), grid, 0.0)
    assert mean(phi) == pytest.approx(0.0, abs=1e-14)
    assert mean(sigma) == pytest.approx(1.0)
    assert phi.max_abs() <= 0.3
    assert u.boundary_normal_max() == 0.0
    assert u.max_abs() > 0.0


def test_zero_amplitude_forcing_vanishes(sim_config):
    solution = _solution(amplitude=0.0, flow=False)
    forcing = manufactured_forcing(solution, sim_config)
    assert_allclose(forcing.phase(0.5).values, 0.0, atol=1e-14)
    assert_allclose(forcing.nutrient(0.5).values, 0.0, atol=1e-14)
    assert forcing.force(0.5).max_abs() == pytest.approx(0.0, abs=1e-14)


def test_mms_config(sim_config):
    config = mms_config(sim_config, _solution(chi=0.5, flow=False), 8, 0.25, 0.01)
    assert config.grid == GridSpec(8, 8)
    assert config.dt == pytest.approx(0.25 / 64)
    assert config.model.chi == 0.5
    assert not config.flow_enabled
    assert config.numerics.advection is AdvectionScheme.CENTRAL
    assert config.numerics.mobility_face_rule is MobilityFaceRule.HARMONIC


def test_zero_amplitude_is_reproduced_to_roundoff(sim_config):
    settings = {"resolutions": [8, 16], "dt_factor": 0.25, "t_end": 0.002, "chi": 0.0, "flow": False, "amplitude": 0.0}
    table = experiment_mms(sim_config, settings)
    assert table.complete
    assert table.verdicts["scalar_order"] is True
    assert all(error <= 1e-12 for error in table.column("err_phi") + table.column("err_sigma"))
    assert table.column("err_u") == [None, None]


def test_errors_decrease_under_refinement(sim_config):
    settings = {"resolutions": [16, 8], "dt_factor": 0.25, "t_end": 0.01, "chi": 0.0, "flow": False, "amplitude": 1.0}
    table = experiment_mms(sim_config, settings)
    assert table.complete
    assert table.column("n") == [8, 16]
    err_phi, err_sigma = table.column("err_phi"), table.column("err_sigma")
    assert err_phi[1] < err_phi[0]
    assert err_sigma[1] < err_sigma[0]
    assert table.rows[1]["order_phi"] > 1.0


def test_scalar_fields_converge_at_second_order(sim_config):
    # t_end is a whole number of steps on every grid: 4, 16 and 64 steps.
    settings = {"resolutions": [16, 32, 64], "dt_factor": 0.25, "t_end": 2.0**-8, "chi": 0.0, "flow": False}
    table = experiment_mms(sim_config, settings)
    assert table.complete
    assert table.column("n") == [16, 32, 64]
    finest = table.rows[-1]
    assert finest["order_phi"] >= MIN_SCALAR_ORDER
    assert finest["order_sigma"] >= MIN_SCALAR_ORDER
    assert MIN_SCALAR_ORDER == 1.8
    assert table.verdicts["scalar_order"] is True


def test_regularized_potential_is_rejected(sim_config):
    with pytest.raises(ChbConfigurationError, match="exact"):
        experiment_mms(sim_config.with_model(n=8), {"resolutions": [8, 16]})
