"""Tests for darcy_solve."""

from __future__ import annotations

import numpy as np
from numpy.testing import assert_allclose
import pytest

from chb_simulator.exceptions import ChbInvariantError, ChbSolverError
from chb_simulator.flow import FlowSolveParams, check_compatible, darcy_solve
from chb_simulator.grid import FaceField, divergence, gradient, mean

pytestmark = pytest.mark.unit


def test_zero_force(grid16):
    u, pi = darcy_solve(FaceField.zeros(grid16), FlowSolveParams())
    assert u.max_abs() == 0.0
    assert pi.max_abs() == 0.0


def test_gradient_force_is_absorbed_by_pressure(grid32, smooth_potential):
    g = smooth_potential(grid32)
    u, pi = darcy_solve(gradient(g), FlowSolveParams())
    assert u.max_abs() < 1e-8
    assert_allclose(pi.values, -(g.values - mean(g)), atol=1e-8)


def test_divergence_free_force_passes_through(grid32, swirl):
    force = swirl(grid32)
    assert divergence(force).max_abs() < 1e-12
    u, pi = darcy_solve(force, FlowSolveParams())
    assert pi.max_abs() < 1e-10
    assert_allclose(u.flat, force.flat, atol=1e-10)


def test_random_force_invariants(grid32, random_force):
    force = random_force(grid32)
    params = FlowSolveParams()
    u, pi = darcy_solve(force, params)
    scale = max(1.0, divergence(force).max_abs())
    assert divergence(u).max_abs() <= 10 * params.krylov_tol * scale
    assert u.boundary_normal_max() == 0.0
    assert abs(mean(pi)) < 1e-13


def test_pressure_sign_flips_only_pressure(grid16, random_force):
    force = random_force(grid16)
    u_plus, pi_plus = darcy_solve(force, FlowSolveParams(pressure_sign=1.0))
    u_minus, pi_minus = darcy_solve(force, FlowSolveParams(pressure_sign=-1.0))
    assert_allclose(u_plus.flat, u_minus.flat, atol=1e-9)
    assert_allclose(pi_plus.values, -pi_minus.values, atol=1e-9)


def test_boundary_normal_force_is_rejected(grid16):
    x = np.zeros(grid16.x_face_shape)
    x[0, 3] = 1.0
    force = FaceField(grid16, x, np.zeros(grid16.y_face_shape))
    with pytest.raises(ChbInvariantError):
        check_compatible(force)
    with pytest.raises(ChbInvariantError):
        darcy_solve(force, FlowSolveParams())


def test_iteration_cap_raises_solver_error(grid32, random_force):
    with pytest.raises(ChbSolverError) as err:
        darcy_solve(random_force(grid32), FlowSolveParams(krylov_max_iter=2))
    assert err.value.residual > 0.0
