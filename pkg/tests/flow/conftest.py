"""Fixtures for the flow tests."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
import pytest

from chb_simulator.flow import velocity_from_stream_function
from chb_simulator.grid import FaceField, GridSpec, ScalarField, gradient


@pytest.fixture
def random_force(rng) -> Callable[[GridSpec], FaceField]:
    """Factory of random face forces with zero boundary-normal components."""

    def build(grid: GridSpec) -> FaceField:
        field = FaceField(grid, rng.standard_normal(grid.x_face_shape), rng.standard_normal(grid.y_face_shape))
        return field.with_zero_normal()

    return build


@pytest.fixture
def smooth_potential() -> Callable[[GridSpec], ScalarField]:
    return lambda grid: ScalarField.from_function(grid, lambda x, y: np.cos(np.pi * x) * np.cos(np.pi * y))


@pytest.fixture
def swirl() -> Callable[[GridSpec], FaceField]:
    return lambda grid: velocity_from_stream_function(
        grid, lambda x, y: np.sin(np.pi * x) * np.sin(np.pi * y)
    )


@pytest.fixture
def smooth_force(grid32, smooth_potential, swirl) -> tuple[FaceField, FaceField]:
    """A smooth force and its divergence-free part."""
    rotational = swirl(grid32)
    return rotational + gradient(smooth_potential(grid32)), rotational
