"""Tests for the discrete calculus on the MAC grid."""

from __future__ import annotations

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal
import pytest

from chb_simulator.exceptions import ChbConfigurationError, ChbInvariantError
from chb_simulator.grid import (
    FaceField,
    GridSpec,
    ScalarField,
    bilaplacian_neumann,
    divergence,
    face_inner_product,
    gradient,
    inner_product,
    laplacian_matrix,
    laplacian_neumann,
    mean,
    norm_sq,
)

pytestmark = pytest.mark.unit


def _random_face_field(grid: GridSpec, rng: np.random.Generator) -> FaceField:
    field = FaceField(grid, rng.standard_normal(grid.x_face_shape), rng.standard_normal(grid.y_face_shape))
    return field.with_zero_normal()


def _dense_gradient_x(grid: GridSpec) -> np.ndarray:
    """Independent loop-built x-gradient stencil."""
    matrix = np.zeros(((grid.nx + 1) * grid.ny, grid.size))
    for i in range(1, grid.nx):
        for j in range(grid.ny):
            row = i * grid.ny + j
            matrix[row, i * grid.ny + j] = 1.0 / grid.hx
            matrix[row, (i - 1) * grid.ny + j] = -1.0 / grid.hx
    return matrix


def _cosine_eigenvalue(h: float) -> float:
    return 2.0 * (1.0 - np.cos(np.pi * h)) / h**2


def test_grid_rejects_too_few_cells():
    with pytest.raises(ChbConfigurationError):
        GridSpec(3, 8)


def test_grid_rejects_nonpositive_length():
    with pytest.raises(ChbConfigurationError):
        GridSpec(8, 8, lx=0.0)


def test_scalar_field_rejects_nan(grid16):
    values = np.zeros(grid16.shape)
    values[3, 4] = np.nan
    with pytest.raises(ChbInvariantError):
        ScalarField(grid16, values)


def test_fields_are_frozen(grid16):
    field = ScalarField.zeros(grid16)
    with pytest.raises(ValueError):
        field.values[0, 0] = 1.0


def test_gradient_of_constant_is_zero(rect_grid):
    grad = gradient(ScalarField.constant(rect_grid, 3.7))
    assert grad.max_abs() == 0.0


def test_gradient_of_linear_field(grid16):
    grad = gradient(ScalarField.from_function(grid16, lambda x, y: x + 0.0 * y))
    assert_allclose(grad.x[1:-1, :], 1.0, rtol=1e-12)
    assert_array_equal(grad.x[[0, -1], :], 0.0)
    assert_array_equal(grad.y, 0.0)


def test_gradient_matches_dense_stencil_and_derivative(grid32):
    f = ScalarField.from_function(grid32, lambda x, y: np.cos(np.pi * x) + 0.0 * y)
    grad = gradient(f)
    dense = (_dense_gradient_x(grid32) @ f.flat).reshape(grid32.x_face_shape)
    assert_allclose(grad.x, dense, atol=1e-13)

    xf, _ = grid32.x_face_centers()
    exact = -np.pi * np.sin(np.pi * xf)
    interior = slice(1, -1)
    assert np.max(np.abs(grad.x[interior] - exact[interior])) < np.pi**3 * grid32.hx**2


def test_divergence_of_zero_is_zero(rect_grid):
    assert divergence(FaceField.zeros(rect_grid)).max_abs() == 0.0


def test_divergence_telescopes(rect_grid, rng):
    flux = _random_face_field(rect_grid, rng)
    total = np.sum(divergence(flux).values) * rect_grid.cell_volume
    assert abs(total) < 1e-12


def test_divergence_is_negative_adjoint_of_gradient(rect_grid, rng):
    for _ in range(20):
        flux = _random_face_field(rect_grid, rng)
        v = ScalarField(rect_grid, rng.standard_normal(rect_grid.shape))
        left = inner_product(divergence(flux), v)
        right = -face_inner_product(flux, gradient(v))
        assert abs(left - right) <= 1e-12 * max(1.0, abs(left))


def test_laplacian_is_divergence_of_gradient(rect_grid, rng):
    f = ScalarField(rect_grid, rng.standard_normal(rect_grid.shape))
    assert_array_equal(laplacian_neumann(f).values, divergence(gradient(f)).values)


def test_laplacian_conserves_and_is_negative(rect_grid, rng):
    assert laplacian_neumann(ScalarField.constant(rect_grid, -2.0)).max_abs() == 0.0
    for _ in range(10):
        f = ScalarField(rect_grid, rng.standard_normal(rect_grid.shape))
        lap = laplacian_neumann(f)
        assert abs(np.sum(lap.values) * rect_grid.cell_volume) < 1e-11
        assert inner_product(lap, f) <= 0.0


def test_laplacian_cosine_eigenmode(grid32):
    f = ScalarField.from_function(grid32, lambda x, y: np.cos(np.pi * x) + 0.0 * y)
    eigenvalue = _cosine_eigenvalue(grid32.hx)
    assert_allclose(laplacian_neumann(f).values, -eigenvalue * f.values, atol=1e-10)

    spectrum = np.linalg.eigvalsh(laplacian_matrix(grid32).toarray())
    assert np.min(np.abs(spectrum + eigenvalue)) < 1e-9 * eigenvalue


def test_bilaplacian_is_nonnegative_square(rect_grid, rng):
    assert bilaplacian_neumann(ScalarField.constant(rect_grid, 1.0)).max_abs() == 0.0
    for _ in range(10):
        f = ScalarField(rect_grid, rng.standard_normal(rect_grid.shape))
        pairing = inner_product(bilaplacian_neumann(f), f)
        assert pairing >= 0.0
        assert abs(pairing - norm_sq(laplacian_neumann(f))) <= 1e-12 * pairing


def test_bilaplacian_cosine_eigenmode(grid32):
    f = ScalarField.from_function(grid32, lambda x, y: np.cos(np.pi * x) + 0.0 * y)
    eigenvalue = _cosine_eigenvalue(grid32.hx)
    assert_allclose(bilaplacian_neumann(f).values, eigenvalue**2 * f.values, atol=1e-7)


def test_inner_product_and_mean(rect_grid, rng):
    f = ScalarField(rect_grid, rng.standard_normal(rect_grid.shape))
    g = ScalarField(rect_grid, rng.standard_normal(rect_grid.shape))
    assert inner_product(f, g) == pytest.approx(inner_product(g, f), rel=1e-15)
    assert mean(ScalarField.constant(rect_grid, 0.42)) == pytest.approx(0.42, rel=1e-14)


def test_mean_of_full_period_cosine_vanishes(grid16):
    f = ScalarField.from_function(grid16, lambda x, y: np.cos(2.0 * np.pi * x) + 0.0 * y)
    assert abs(mean(f)) < 1e-15


def test_grid_mismatch_is_an_error(grid16, grid32):
    with pytest.raises(ChbConfigurationError):
        inner_product(ScalarField.zeros(grid16), ScalarField.zeros(grid32))
