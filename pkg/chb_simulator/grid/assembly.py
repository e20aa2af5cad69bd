"""
Sparse matrix forms of the grid operators.

Used by the implicit solvers and by tests that compare stencils with an
independently assembled operator. Cell vectors are row-major (x slowest);
face vectors stack the x-components before the y-components. Matrices are
cached per grid and must be treated as read-only.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .spec import GridSpec


def _difference_to_faces(n: int, h: float) -> sp.csr_matrix:
    """1D map from n cells to n + 1 faces with zero boundary rows."""
    rows = np.arange(1, n)
    data = np.concatenate([-np.ones(n - 1), np.ones(n - 1)]) / h
    return sp.csr_matrix(
        (data, (np.concatenate([rows, rows]), np.concatenate([rows - 1, rows]))),
        shape=(n + 1, n),
    )


def _difference_to_cells(n: int, h: float) -> sp.csr_matrix:
    """1D map from n + 1 faces to n cells."""
    return sp.diags([-np.ones(n), np.ones(n)], [0, 1], shape=(n, n + 1), format="csr") / h


@lru_cache(maxsize=32)
def gradient_matrix(grid: GridSpec) -> sp.csr_matrix:
    """Gradient as a (faces x cells) matrix."""
    gx = sp.kron(_difference_to_faces(grid.nx, grid.hx), sp.identity(grid.ny))
    gy = sp.kron(sp.identity(grid.nx), _difference_to_faces(grid.ny, grid.hy))
    return sp.vstack([gx, gy], format="csr")


@lru_cache(maxsize=32)
def divergence_matrix(grid: GridSpec) -> sp.csr_matrix:
    """Divergence as a (cells x faces) matrix, boundary columns included."""
    dx = sp.kron(_difference_to_cells(grid.nx, grid.hx), sp.identity(grid.ny))
    dy = sp.kron(sp.identity(grid.nx), _difference_to_cells(grid.ny, grid.hy))
    return sp.hstack([dx, dy], format="csr")


@lru_cache(maxsize=32)
def laplacian_matrix(grid: GridSpec) -> sp.csr_matrix:
    """Neumann Laplacian, symmetric negative semidefinite with the constants as kernel."""
    return (divergence_matrix(grid) @ gradient_matrix(grid)).tocsr()


@lru_cache(maxsize=32)
def bilaplacian_matrix(grid: GridSpec) -> sp.csr_matrix:
    """Square of the Neumann Laplacian."""
    lap = laplacian_matrix(grid)
    return (lap @ lap).tocsr()


def boundary_face_mask(grid: GridSpec) -> np.ndarray:
    """Boolean mask over the stacked face vector marking boundary-normal faces."""
    mx = np.zeros(grid.x_face_shape, dtype=bool)
    my = np.zeros(grid.y_face_shape, dtype=bool)
    mx[[0, -1], :] = True
    my[:, [0, -1]] = True
    return np.concatenate([mx.ravel(), my.ravel()])


__all__ = [
    "bilaplacian_matrix",
    "boundary_face_mask",
    "divergence_matrix",
    "gradient_matrix",
    "laplacian_matrix",
]
