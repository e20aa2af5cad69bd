"""Tests for ch_step."""

from __future__ import annotations

import logging

import numpy as np
from numpy.testing import assert_allclose
import pytest

from chb_simulator.cahn_hilliard import CHStepParams, ch_step, check_advection_cfl
from chb_simulator.constitutive import builtin_sources, potential_F
from chb_simulator.data import AdvectionScheme, ModelParams
from chb_simulator.exceptions import ChbConfigurationError, ChbStepError
from chb_simulator.flow.stream import velocity_from_stream_function
from chb_simulator.grid import (
    FaceField,
    GridSpec,
    ScalarField,
    face_norm_sq,
    gradient,
    integral,
    laplacian_neumann,
    mean,
    norm_sq,
)

pytestmark = pytest.mark.unit


def _energy(phi: ScalarField, mp: ModelParams) -> float:
    """Cahn-Hilliard part of the free energy."""
    value = 0.5 * face_norm_sq(gradient(phi)) + integral(ScalarField(phi.grid, potential_F(phi.values, mp.potential)))
    if mp.n is not None:
        value += 0.5 / mp.n * norm_sq(laplacian_neumann(phi))
    return value


def _swirl(grid: GridSpec, amplitude: float) -> FaceField:
    return velocity_from_stream_function(grid, lambda x, y: amplitude * np.sin(np.pi * x) * np.sin(np.pi * y))


@pytest.fixture
def zero_sources():
    return builtin_sources("zero", {}, ell=1.0)


def test_params_reject_nonpositive_dt():
    with pytest.raises(ChbConfigurationError):
        CHStepParams(dt=0.0)


def test_constant_state_follows_mean_identity(grid16, zero_sources, model_params):
    phi = ScalarField.constant(grid16, 0.3)
    sigma = ScalarField.zeros(grid16)
    dt = 0.1
    result = ch_step(phi, sigma, FaceField.zeros(grid16), zero_sources, model_params, CHStepParams(dt=dt))
    assert np.ptp(result.phi.values) < 1e-13
    new_mean = mean(result.phi)
    assert (new_mean - 0.3) / dt == pytest.approx(-new_mean, abs=1e-12)


def test_energy_nonincreasing_without_coupling(grid16, rng, zero_sources, model_params):
    phi = ScalarField(grid16, 0.1 * rng.uniform(-1.0, 1.0, grid16.shape))
    sigma = ScalarField.zeros(grid16)
    u = FaceField.zeros(grid16)
    params = CHStepParams(dt=1e-3)
    energies = [_energy(phi, model_params)]
    for _ in range(20):
        phi = ch_step(phi, sigma, u, zero_sources, model_params, params).phi
        energies.append(_energy(phi, model_params))
    assert np.all(np.diff(energies) <= 1e-10)


def test_phase_field_stays_inside_interval(grid16, zero_sources):
    mp = ModelParams(chi=0.5, ell=1.0, lam=3.0, p=2.0, epsilon=0.0)
    phi = ScalarField.from_function(grid16, lambda x, y: 0.95 * np.tanh(8.0 * (x - 0.5)))
    sigma = ScalarField.constant(grid16, 1.0)
    u = FaceField.zeros(grid16)
    params = CHStepParams(dt=1e-4)
    for _ in range(5):
        phi = ch_step(phi, sigma, u, zero_sources, mp, params).phi
        assert phi.max_abs() < 1.0


def test_mass_identity_with_transport_and_source(grid16, smooth_phi):
    mp = ModelParams(chi=0.2, ell=1.0, lam=1.0, p=1.5, epsilon=0.0)
    src = builtin_sources("logistic_h_saturating", {"H": 0.5}, ell=mp.ell)
    sigma = ScalarField.from_function(grid16, lambda x, y: 1.0 + 0.5 * np.cos(np.pi * x))
    u = _swirl(grid16, 0.05)
    dt = 1e-3
    result = ch_step(smooth_phi, sigma, u, src, mp, CHStepParams(dt=dt))
    source_mean = float(np.mean(src.h(sigma.values, smooth_phi.values)))
    expected = (mean(smooth_phi) + dt * source_mean) / (1.0 + dt * mp.ell)
    assert mean(result.phi) == pytest.approx(expected, abs=1e-12)


def test_converged_residual_meets_scaled_tolerance(grid16, smooth_phi, zero_sources, model_params):
    params = CHStepParams(dt=1e-3, newton_tol=1e-10)
    result = ch_step(smooth_phi, ScalarField.zeros(grid16), FaceField.zeros(grid16), zero_sources, model_params, params)
    assert result.iterations >= 1
    assert result.residuals[-1] < result.residuals[0]


def test_debug_logging_reports_every_newton_iteration(grid16, smooth_phi, zero_sources, model_params, caplog):
    params = CHStepParams(dt=1e-3, newton_tol=1e-10)
    with caplog.at_level(logging.DEBUG, logger="chb_simulator"):
        result = ch_step(
            smooth_phi, ScalarField.zeros(grid16), FaceField.zeros(grid16), zero_sources, model_params, params
        )
    iterations = [record for record in caplog.records if record.getMessage().startswith("Newton iteration")]
    assert len(iterations) == len(result.residuals) - 1


def test_regularized_mode_step(grid16, smooth_phi, zero_sources):
    mp = ModelParams(chi=0.0, ell=1.0, lam=0.0, p=2.0, epsilon=0.0, n=16)
    phi = smooth_phi
    sigma = ScalarField.zeros(grid16)
    u = FaceField.zeros(grid16)
    energies = [_energy(phi, mp)]
    for _ in range(5):
        phi = ch_step(phi, sigma, u, zero_sources, mp, CHStepParams(dt=1e-3)).phi
        energies.append(_energy(phi, mp))
    assert np.all(np.diff(energies) <= 1e-10)


def test_central_and_upwind_agree_for_zero_velocity(grid16, smooth_phi, zero_sources, model_params):
    sigma = ScalarField.zeros(grid16)
    u = FaceField.zeros(grid16)
    upwind = ch_step(smooth_phi, sigma, u, zero_sources, model_params, CHStepParams(dt=1e-3))
    central = ch_step(
        smooth_phi, sigma, u, zero_sources, model_params, CHStepParams(dt=1e-3, advection=AdvectionScheme.CENTRAL)
    )
    assert_allclose(upwind.phi.values, central.phi.values, atol=1e-14)


def test_advection_cfl_violation_is_a_step_error(grid16, smooth_phi, zero_sources, model_params):
    u = _swirl(grid16, 50.0)
    with pytest.raises(ChbStepError):
        check_advection_cfl(u, dt=0.1)
    with pytest.raises(ChbStepError):
        ch_step(smooth_phi, ScalarField.zeros(grid16), u, zero_sources, model_params, CHStepParams(dt=0.1))


def test_cfl_check_ignores_zero_velocity(grid16):
    check_advection_cfl(FaceField.zeros(grid16), dt=1e6)
