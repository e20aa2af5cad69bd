"""Sparse matrices agree with the stencil operators."""

from __future__ import annotations

import numpy as np
from numpy.testing import assert_allclose
import pytest

from chb_simulator.grid import (
    FaceField,
    ScalarField,
    bilaplacian_matrix,
    bilaplacian_neumann,
    divergence,
    divergence_matrix,
    gradient,
    gradient_matrix,
    laplacian_matrix,
    laplacian_neumann,
)

pytestmark = pytest.mark.unit


def test_matrices_reproduce_stencils(rect_grid, rng):
    f = ScalarField(rect_grid, rng.standard_normal(rect_grid.shape))
    flux = FaceField(
        rect_grid, rng.standard_normal(rect_grid.x_face_shape), rng.standard_normal(rect_grid.y_face_shape)
    )

    assert_allclose(gradient_matrix(rect_grid) @ f.flat, gradient(f).flat, atol=1e-12)
    assert_allclose(divergence_matrix(rect_grid) @ flux.flat, divergence(flux).flat, atol=1e-12)
    assert_allclose(laplacian_matrix(rect_grid) @ f.flat, laplacian_neumann(f).flat, atol=1e-10)
    assert_allclose(bilaplacian_matrix(rect_grid) @ f.flat, bilaplacian_neumann(f).flat, rtol=1e-12, atol=1e-7)


def test_laplacian_matrix_is_minus_gram_of_gradient(rect_grid):
    lap = laplacian_matrix(rect_grid).toarray()
    grad = gradient_matrix(rect_grid).toarray()
    assert_allclose(lap, lap.T, atol=1e-12)
    assert_allclose(lap, -grad.T @ grad, atol=1e-10)
    assert np.max(np.linalg.eigvalsh(lap)) < 1e-10
