"""
Brinkman flow on the MAC grid with free-slip walls.

Velocity unknowns are the interior face values; the normal component on the
walls is zero by construction. The strain Du is discretized with D11 and D22
at cell centres and D12 at interior nodes; D12 vanishes on wall nodes, which
is the tangential stress-free condition on axis-aligned walls. The viscous
operator is the adjoint form S^T W S of the strain, so testing the momentum
equation with u gives eps ||Du||**2 + ||u||**2 = <force, u> exactly.

The saddle system

    eps S^T W S u + u - s G pi = force,    div u = 0

is reduced to the pressure Schur complement G^T A^-1 G, solved by CG with an
exact sparse LU inner velocity solve and the preconditioner eps I + (-L)^-1.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from numpy.typing import NDArray
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from chb_simulator.exceptions import ChbConfigurationError
from chb_simulator.grid import (
    FaceField,
    GridSpec,
    ScalarField,
    divergence_matrix,
    gradient_matrix,
    laplacian_matrix,
)
from chb_simulator.grid.assembly import boundary_face_mask

from .darcy import check_compatible, conjugate_gradient, darcy_solve, divergence_tolerance
from .params import FlowSolveParams


def _interior_difference(n: int, h: float) -> sp.csr_matrix:
    """(n - 1) x n map from cells to interior faces."""
    return sp.diags([-np.ones(n - 1), np.ones(n - 1)], [0, 1], shape=(n - 1, n), format="csr") / h


@lru_cache(maxsize=16)
def strain_matrix(grid: GridSpec) -> tuple[sp.csr_matrix, NDArray[np.float64]]:
    """
    Strain of a full face vector stacked as (D11, D22, D12) with its quadrature weights.

    The weights already include hx hy and the factor 2 of the off-diagonal
    entry, so ||Du||**2 = sum(weights * (S u)**2).
    """
    nx, ny = grid.nx, grid.ny
    n_x_faces = (nx + 1) * ny
    n_y_faces = nx * (ny + 1)
    div = divergence_matrix(grid)
    d11 = sp.hstack([div[:, :n_x_faces], sp.csr_matrix((grid.size, n_y_faces))])
    d22 = sp.hstack([sp.csr_matrix((grid.size, n_x_faces)), div[:, n_x_faces:]])
    dy_ux = sp.kron(sp.eye(nx - 1, nx + 1, k=1), _interior_difference(ny, grid.hy))
    dx_uy = sp.kron(_interior_difference(nx, grid.hx), sp.eye(ny - 1, ny + 1, k=1))
    d12 = 0.5 * sp.hstack([dy_ux, dx_uy])
    strain = sp.vstack([d11, d22, d12], format="csr")
    n_nodes = (nx - 1) * (ny - 1)
    weights = grid.cell_volume * np.concatenate([np.ones(2 * grid.size), np.full(n_nodes, 2.0)])
    return strain, weights


def strain_norm_sq(u: FaceField) -> float:
    """||Du||**2 with the quadrature of the viscous operator."""
    strain, weights = strain_matrix(u.grid)
    values = strain @ u.flat
    return float(np.sum(weights * values * values))


@lru_cache(maxsize=16)
def _interior_selection(grid: GridSpec) -> sp.csr_matrix:
    mask = boundary_face_mask(grid)
    return sp.identity(mask.size, format="csr")[np.flatnonzero(~mask)]


@lru_cache(maxsize=8)
def _velocity_factor(grid: GridSpec, epsilon: float) -> spla.SuperLU:
    strain, weights = strain_matrix(grid)
    viscous = strain.T @ sp.diags(weights / grid.cell_volume) @ strain
    restrict = _interior_selection(grid)
    matrix = restrict @ (epsilon * viscous + sp.identity(viscous.shape[0])) @ restrict.T
    return spla.splu(matrix.tocsc())


@lru_cache(maxsize=16)
def _poisson_factor(grid: GridSpec) -> spla.SuperLU:
    """LU of -L with the first cell pinned."""
    return spla.splu((-laplacian_matrix(grid))[1:, 1:].tocsc())


def _inverse_negative_laplacian(grid: GridSpec, rhs: NDArray[np.float64]) -> NDArray[np.float64]:
    centred = rhs - np.mean(rhs)
    solution = np.zeros_like(centred)
    solution[1:] = _poisson_factor(grid).solve(centred[1:])
    return solution - np.mean(solution)


def brinkman_solve(force: FaceField, params: FlowSolveParams) -> tuple[FaceField, ScalarField]:
    """
    Solve -eps div(Du) + u - s grad pi = force, div u = 0, with free-slip walls.

    Args:
        force: Face force with zero boundary-normal components.
        params: Solver settings with epsilon > 0.

    Returns:
        The velocity and the zero-mean pressure.

    Raises:
        ChbConfigurationError: If epsilon is not positive.
        ChbInvariantError: For incompatible forces.
        ChbSolverError: If the Schur complement CG does not converge.

    """
    if params.epsilon <= 0:
        msg = f"brinkman_solve needs epsilon > 0, got {params.epsilon}"
        raise ChbConfigurationError(msg)
    check_compatible(force)
    grid = force.grid
    sign = params.pressure_sign
    restrict = _interior_selection(grid)
    lu = _velocity_factor(grid, params.epsilon)
    grad = (restrict @ gradient_matrix(grid)).tocsr()
    forcing = restrict @ force.flat

    def schur(pressure: NDArray[np.float64]) -> NDArray[np.float64]:
        return grad.T @ lu.solve(grad @ pressure)

    def precondition(residual: NDArray[np.float64]) -> NDArray[np.float64]:
        centred = residual - np.mean(residual)
        return params.epsilon * centred + _inverse_negative_laplacian(grid, centred)

    shape = (grid.size, grid.size)
    rhs = -sign * (grad.T @ lu.solve(forcing))
    pressure = conjugate_gradient(
        spla.LinearOperator(shape, matvec=schur, dtype=np.float64),
        rhs,
        divergence_tolerance(force, params),
        params.krylov_max_iter,
        preconditioner=spla.LinearOperator(shape, matvec=precondition, dtype=np.float64),
        what="Brinkman pressure",
    )
    velocity = restrict.T @ lu.solve(forcing + sign * (grad @ pressure))
    return FaceField.from_flat(grid, velocity), ScalarField.from_flat(grid, pressure)


def solve_flow(force: FaceField, params: FlowSolveParams) -> tuple[FaceField, ScalarField]:
    """Dispatch to brinkman_solve, or darcy_solve when epsilon = 0."""
    if params.epsilon == 0:
        return darcy_solve(force, params)
    return brinkman_solve(force, params)


__all__ = ["brinkman_solve", "solve_flow", "strain_matrix", "strain_norm_sq"]
