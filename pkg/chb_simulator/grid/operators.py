"""
Stencil operators on the MAC grid.

All operators are pure: they read frozen fields and return new ones. The
boundary treatment is homogeneous Neumann through ghost reflection, which on
the staggered layout means boundary-normal gradient components are zero.
"""

from __future__ import annotations

import numpy as np

from .spec import FaceField, ScalarField, check_same_grid


def gradient(f: ScalarField) -> FaceField:
    """
    Centred difference across each face.

    Interior faces get (f_R - f_L) / h. Boundary faces get zero, the value
    produced by reflecting f into a ghost cell.

    Args:
        f: Cell-centred field.

    Returns:
        Face field with zero boundary-normal components.

    """
    grid = f.grid
    gx = np.zeros(grid.x_face_shape)
    gy = np.zeros(grid.y_face_shape)
    gx[1:-1, :] = np.diff(f.values, axis=0) / grid.hx
    gy[:, 1:-1] = np.diff(f.values, axis=1) / grid.hy
    return FaceField(grid, gx, gy)


def divergence(flux: FaceField) -> ScalarField:
    """Per-cell flux balance divided by the cell volume."""
    grid = flux.grid
    values = np.diff(flux.x, axis=0) / grid.hx + np.diff(flux.y, axis=1) / grid.hy
    return ScalarField(grid, values)


def laplacian_neumann(f: ScalarField) -> ScalarField:
    """Five-point Laplacian with homogeneous Neumann data, literally divergence(gradient(f))."""
    return divergence(gradient(f))


def bilaplacian_neumann(f: ScalarField) -> ScalarField:
    """
    Apply the Neumann Laplacian twice.

    The composition enforces both the Neumann condition on f and on its
    Laplacian, which is the boundary condition of the sixth-order
    regularized Cahn-Hilliard system.
    """
    return laplacian_neumann(laplacian_neumann(f))


def inner_product(f: ScalarField, g: ScalarField) -> float:
    """Midpoint-rule L2 pairing."""
    check_same_grid(f.grid, g.grid)
    return float(np.sum(f.values * g.values) * f.grid.cell_volume)


def integral(f: ScalarField) -> float:
    """Midpoint-rule integral over the domain."""
    return float(np.sum(f.values) * f.grid.cell_volume)


def mean(f: ScalarField) -> float:
    """Domain average."""
    return integral(f) / f.grid.area


def norm_sq(f: ScalarField) -> float:
    """Squared L2 norm."""
    return inner_product(f, f)


def face_inner_product(first: FaceField, second: FaceField) -> float:
    """
    L2 pairing of face fields, each face weighted by hx * hy.

    With this weight divergence is exactly the negative adjoint of gradient
    for fields whose boundary-normal components vanish.
    """
    check_same_grid(first.grid, second.grid)
    total = np.sum(first.x * second.x) + np.sum(first.y * second.y)
    return float(total * first.grid.cell_volume)


def face_norm_sq(field: FaceField) -> float:
    """Squared L2 norm of a face field."""
    return face_inner_product(field, field)


def face_average(f: ScalarField) -> FaceField:
    """
    Arithmetic mean of the two cells sharing each face.

    Boundary faces take the value of their single adjacent cell.
    """
    grid = f.grid
    v = f.values
    ax = np.empty(grid.x_face_shape)
    ay = np.empty(grid.y_face_shape)
    ax[1:-1, :] = 0.5 * (v[:-1, :] + v[1:, :])
    ax[0, :] = v[0, :]
    ax[-1, :] = v[-1, :]
    ay[:, 1:-1] = 0.5 * (v[:, :-1] + v[:, 1:])
    ay[:, 0] = v[:, 0]
    ay[:, -1] = v[:, -1]
    return FaceField(grid, ax, ay)


def face_product(first: FaceField, second: FaceField) -> FaceField:
    """Facewise product of two face fields."""
    check_same_grid(first.grid, second.grid)
    return FaceField(first.grid, first.x * second.x, first.y * second.y)


def upwind_values(f: ScalarField, velocity: FaceField) -> FaceField:
    """
    Donor-cell face values of f for the given face velocity.

    Each interior face takes f from the cell the velocity leaves. Boundary
    faces take the adjacent cell value; they carry no flux when the velocity
    has zero normal component.
    """
    check_same_grid(f.grid, velocity.grid)
    grid = f.grid
    v = f.values
    fx = np.empty(grid.x_face_shape)
    fy = np.empty(grid.y_face_shape)
    fx[1:-1, :] = np.where(velocity.x[1:-1, :] >= 0.0, v[:-1, :], v[1:, :])
    fx[0, :] = v[0, :]
    fx[-1, :] = v[-1, :]
    fy[:, 1:-1] = np.where(velocity.y[:, 1:-1] >= 0.0, v[:, :-1], v[:, 1:])
    fy[:, 0] = v[:, 0]
    fy[:, -1] = v[:, -1]
    return FaceField(grid, fx, fy)


__all__ = [
    "bilaplacian_neumann",
    "divergence",
    "face_average",
    "face_inner_product",
    "face_norm_sq",
    "face_product",
    "gradient",
    "inner_product",
    "integral",
    "laplacian_neumann",
    "mean",
    "norm_sq",
    "upwind_values",
]
