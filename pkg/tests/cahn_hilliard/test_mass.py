"""Tests for the scalar mass reference."""

from __future__ import annotations

import math

import numpy as np
import pytest

from chb_simulator.cahn_hilliard import mass_ode_reference, mean_bound_delta
from chb_simulator.exceptions import ChbConfigurationError

pytestmark = pytest.mark.unit


def test_decay_without_source_is_first_order():
    exact = 0.2 * math.exp(-1.0)
    errors = []
    for dt in (1e-2, 5e-3, 2.5e-3):
        _, means = mass_ode_reference(0.2, 1.0, lambda _t: 0.0, 1.0, dt)
        errors.append(abs(means[-1] - exact))
    assert exact == pytest.approx(0.0735759, abs=1e-7)
    assert errors[0] / errors[1] == pytest.approx(2.0, rel=0.05)
    assert errors[1] / errors[2] == pytest.approx(2.0, rel=0.05)


def test_constant_source_approaches_steady_state():
    _, means = mass_ode_reference(-0.5, 2.0, np.full(4000, 1.0), 20.0, 5e-3)
    assert means[-1] == pytest.approx(0.5, abs=1e-8)


def test_means_stay_inside_bound():
    h_bound, ell, m0 = 0.6, 1.0, 0.3
    delta = mean_bound_delta(m0, ell, h_bound)
    _, means = mass_ode_reference(m0, ell, lambda t: h_bound * math.sin(5.0 * t), 5.0, 1e-2)
    assert np.all(np.abs(means) <= 1.0 - delta + 1e-15)


def test_sampled_source_needs_enough_values():
    with pytest.raises(ChbConfigurationError):
        mass_ode_reference(0.0, 1.0, [0.0, 0.0], 1.0, 0.1)


def test_initial_mean_outside_interval():
    with pytest.raises(ChbConfigurationError):
        mass_ode_reference(1.0, 1.0, lambda _t: 0.0, 1.0, 0.1)


@pytest.mark.parametrize(
    ("m0", "ell", "h_bound", "expected"),
    [(0.0, 1.0, 0.0, 1.0), (0.3, 1.0, 0.5, 0.5), (-0.8, 2.0, 0.4, 0.2)],
)
def test_mean_bound_delta(m0, ell, h_bound, expected):
    assert mean_bound_delta(m0, ell, h_bound) == pytest.approx(expected)


def test_mean_bound_delta_rejects_large_source():
    with pytest.raises(ChbConfigurationError):
        mean_bound_delta(0.0, 1.0, 1.5)
