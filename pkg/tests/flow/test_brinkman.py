"""Tests for brinkman_solve."""

from __future__ import annotations

from itertools import pairwise

import numpy as np
from numpy.testing import assert_allclose
import pytest

from chb_simulator.exceptions import ChbConfigurationError
from chb_simulator.flow import FlowSolveParams, brinkman_solve, darcy_solve, solve_flow, strain_norm_sq
from chb_simulator.grid import FaceField, divergence, face_inner_product, face_norm_sq, gradient, mean

pytestmark = pytest.mark.unit

EPSILONS = (1e-1, 1e-2, 1e-3, 1e-4)


def _gap(first: FaceField, second: FaceField) -> float:
    return float(np.sqrt(face_norm_sq(first - second)))


def test_zero_force(grid16):
    u, pi = brinkman_solve(FaceField.zeros(grid16), FlowSolveParams(epsilon=0.1))
    assert u.max_abs() == 0.0
    assert pi.max_abs() == 0.0


def test_rejects_zero_viscosity(grid16):
    with pytest.raises(ChbConfigurationError):
        brinkman_solve(FaceField.zeros(grid16), FlowSolveParams(epsilon=0.0))


def test_gradient_force_is_absorbed_by_pressure(grid16, smooth_potential):
    g = smooth_potential(grid16)
    u, pi = brinkman_solve(gradient(g), FlowSolveParams(epsilon=0.05))
    assert u.max_abs() < 1e-8
    assert_allclose(pi.values, -(g.values - mean(g)), atol=1e-8)


@pytest.mark.parametrize("epsilon", [1e-3, 0.1, 1.0])
def test_energy_identity_and_incompressibility(grid16, random_force, epsilon):
    force = random_force(grid16)
    params = FlowSolveParams(epsilon=epsilon)
    u, pi = brinkman_solve(force, params)
    lhs = epsilon * strain_norm_sq(u) + face_norm_sq(u)
    assert lhs == pytest.approx(face_inner_product(force, u), rel=1e-8)
    assert divergence(u).max_abs() <= 10 * params.krylov_tol * max(1.0, divergence(force).max_abs())
    assert u.boundary_normal_max() == 0.0
    assert abs(mean(pi)) < 1e-13


def test_gap_to_darcy_decreases_with_epsilon(grid16, random_force):
    for _ in range(3):
        force = random_force(grid16)
        darcy, _ = darcy_solve(force, FlowSolveParams())
        gaps = [_gap(brinkman_solve(force, FlowSolveParams(epsilon=eps))[0], darcy) for eps in EPSILONS]
        assert all(later < earlier for earlier, later in pairwise(gaps))


def test_smooth_force_converges_to_darcy(smooth_force):
    force, rotational = smooth_force
    darcy, _ = darcy_solve(force, FlowSolveParams())
    assert _gap(darcy, rotational) < 1e-8
    gaps = [_gap(brinkman_solve(force, FlowSolveParams(epsilon=eps))[0], darcy) for eps in (*EPSILONS, 1e-5)]
    assert gaps[-2] * 10 < gaps[0]
    assert gaps[-1] < 1e-3 * np.sqrt(face_norm_sq(darcy))


def test_solve_flow_dispatch(grid16, random_force):
    force = random_force(grid16)
    darcy, _ = solve_flow(force, FlowSolveParams(epsilon=0.0))
    reference, _ = darcy_solve(force, FlowSolveParams())
    assert_allclose(darcy.flat, reference.flat)
    viscous, _ = solve_flow(force, FlowSolveParams(epsilon=0.5))
    assert face_norm_sq(viscous) < face_norm_sq(darcy)
