"""Tests for the energy and entropy residuals."""

from __future__ import annotations

from dataclasses import replace

import numpy as np
import pytest

from chb_simulator.cahn_hilliard import CHStepParams, ch_step
from chb_simulator.constitutive import builtin_sources, potential_f
from chb_simulator.data import ModelParams
from chb_simulator.diagnostics import entropy_identity_residual, make_record, source_power
from chb_simulator.grid import ScalarField, bilaplacian_neumann, laplacian_neumann

pytestmark = pytest.mark.unit


def _discrete_mu(phi: ScalarField, sigma: ScalarField, mp: ModelParams) -> ScalarField:
    values = -laplacian_neumann(phi).values + potential_f(phi.values, mp.potential) - mp.chi * sigma.values
    if mp.n is not None:
        values = values + bilaplacian_neumann(phi).values / mp.n
    return ScalarField(phi.grid, values)


@pytest.mark.parametrize("n", [None, 8])
def test_entropy_identity_is_exact_for_discrete_potential(grid16, smooth_phi, n):
    mp = ModelParams(chi=0.8, ell=1.0, lam=1.5, p=1.5, epsilon=0.0, n=n)
    sigma = ScalarField.from_function(grid16, lambda x, y: 1.0 + 0.5 * np.sin(np.pi * x) * np.cos(np.pi * y))
    mu = _discrete_mu(smooth_phi, sigma, mp)
    scale = abs(float(np.sum(laplacian_neumann(smooth_phi).values ** 2))) + 1.0
    assert abs(entropy_identity_residual(smooth_phi, mu, sigma, mp)) <= 1e-10 * scale


def test_entropy_identity_detects_inconsistent_potential(grid16, smooth_phi, model_params):
    sigma = ScalarField.constant(grid16, 1.0)
    mu = _discrete_mu(smooth_phi, sigma, model_params) + smooth_phi
    assert abs(entropy_identity_residual(smooth_phi, mu, sigma, model_params)) > 1e-3


def test_rest_state_residual_vanishes(rest_state, zero_sources, model_params):
    first = make_record(rest_state, model_params, zero_sources, dt=0.0, mass_ode_ref=0.0)
    later = replace(rest_state, t=0.1, step=1)
    second = make_record(
        later,
        model_params,
        zero_sources,
        dt=0.1,
        mass_ode_ref=0.0,
        previous_state=rest_state,
        previous_record=first,
    )
    assert first.energy_residual == 0.0
    assert second.source_terms == 0.0
    assert second.energy_residual == pytest.approx(0.0, abs=1e-14)


def test_source_free_phase_step_dissipates(grid16, smooth_phi, zero_sources, model_params, rest_state):
    previous = replace(rest_state, phi=smooth_phi, mu=_discrete_mu(smooth_phi, rest_state.sigma, model_params))
    dt = 1e-3
    result = ch_step(previous.phi, previous.sigma, previous.u, zero_sources, model_params, CHStepParams(dt=dt))
    current = replace(previous, phi=result.phi, mu=result.mu, t=dt, step=1)
    first = make_record(previous, model_params, zero_sources, dt=0.0, mass_ode_ref=0.0)
    second = make_record(
        current,
        model_params,
        zero_sources,
        dt=dt,
        mass_ode_ref=0.0,
        previous_state=previous,
        previous_record=first,
    )
    # Only the linear sink remains on the right-hand side.
    expected_power = -model_params.ell * float(np.sum(result.phi.values * result.mu.values)) * grid16.cell_volume
    assert second.source_terms == pytest.approx(expected_power, rel=1e-10, abs=1e-14)
    assert second.energy_residual <= 1e-5
    assert second.energy < first.energy


def test_source_power_pairs_sources_with_potentials(grid16, rest_state, model_params):
    src = builtin_sources("linear_b", {"b0": 1.0, "b_inf": 2.0}, ell=1.0)
    e = float(np.e)
    current = replace(rest_state, sigma=ScalarField.constant(grid16, e))
    # p = 2 and chi = 0: gamma(e) = e; the old-level growth b(1) = 1 meets the new-level decay.
    power = source_power(rest_state, current, src, model_params)
    assert power == pytest.approx(grid16.area * (2.0 - e) * e, rel=1e-12)
