"""Shared fixtures for chb_simulator tests."""

from __future__ import annotations

from typing import Any

import numpy as np
import pytest

from chb_simulator.config_handler import validate_config
from chb_simulator.data import ModelParams, SimConfig
from chb_simulator.grid import GridSpec, ScalarField


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def grid16() -> GridSpec:
    return GridSpec(16, 16)


@pytest.fixture
def grid32() -> GridSpec:
    return GridSpec(32, 32)


@pytest.fixture
def rect_grid() -> GridSpec:
    return GridSpec(12, 8, 1.5, 1.0)


@pytest.fixture
def smooth_phi(grid16: GridSpec) -> ScalarField:
    return ScalarField.from_function(grid16, lambda x, y: 0.3 * np.cos(np.pi * x) * np.cos(np.pi * y))


@pytest.fixture
def model_params() -> ModelParams:
    return ModelParams(chi=0.0, ell=1.0, lam=0.0, p=2.0, epsilon=0.0)


@pytest.fixture
def raw_config() -> dict[str, Any]:
    """Small source-free run without chemotaxis or flow, as loaded from YAML."""
    return {
        "name": "smoke",
        "grid": {"nx": 8, "ny": 8},
        "model": {"chi": 0.0, "ell": 1.0, "lambda": 0.0, "p": 2.0, "epsilon": 0.0, "q0": 4.0},
        "sources": {"name": "zero"},
        "initial_data": {
            "phi0": {"kind": "constant_mean", "mean": 0.0, "noise": 0.3, "seed": 3},
            "sigma0": {"kind": "constant", "value": 1.0},
        },
        "time": {"dt": 1e-3, "t_end": 5e-3},
        "flow": {"enabled": False},
    }


@pytest.fixture
def sim_config(raw_config: dict[str, Any]) -> SimConfig:
    config, report = validate_config(raw_config)
    assert report.passed, report.as_dict()
    assert config is not None
    return config
