"""
Darcy limit through the pressure Poisson equation.

With u = s grad pi + force and div u = 0, the pressure solves
-L pi = s div(force) with homogeneous Neumann conditions, which is compatible
because force has zero boundary-normal components. The solve is matrix-free
conjugate gradients on the zero-mean subspace.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from numpy.typing import NDArray
import scipy.sparse.linalg as spla

from chb_simulator.const import COMPATIBILITY_TOL, LOGGER
from chb_simulator.exceptions import ChbInvariantError, ChbSolverError
from chb_simulator.grid import FaceField, GridSpec, ScalarField, divergence, gradient, laplacian_neumann

from .params import FlowSolveParams


def check_compatible(force: FaceField) -> None:
    """
    Reject forces whose pressure equation has no solution.

    Raises:
        ChbInvariantError: If force has boundary-normal components or its
            divergence has nonzero mean beyond roundoff.

    """
    if force.boundary_normal_max() != 0.0:
        msg = f"Force has boundary-normal components up to {force.boundary_normal_max():.3e}"
        raise ChbInvariantError(msg)
    div = divergence(force).values
    scale = max(1.0, float(np.max(np.abs(div))))
    drift = abs(float(np.mean(div)))
    if drift > COMPATIBILITY_TOL * scale:
        msg = f"Pressure equation is incompatible: mean(div force) = {drift:.3e}"
        raise ChbInvariantError(msg)


def divergence_tolerance(force: FaceField, params: FlowSolveParams) -> float:
    """Absolute target for |div u|, krylov_tol * max(1, |div force|)."""
    return params.krylov_tol * max(1.0, divergence(force).max_abs())


@lru_cache(maxsize=16)
def _negative_laplacian(grid: GridSpec) -> spla.LinearOperator:
    def matvec(vector: NDArray[np.float64]) -> NDArray[np.float64]:
        return -laplacian_neumann(ScalarField.from_flat(grid, vector)).flat

    return spla.LinearOperator((grid.size, grid.size), matvec=matvec, dtype=np.float64)


def conjugate_gradient(
    operator: spla.LinearOperator,
    rhs: NDArray[np.float64],
    atol: float,
    max_iter: int,
    preconditioner: spla.LinearOperator | None = None,
    what: str = "pressure",
) -> NDArray[np.float64]:
    """
    Zero-mean CG solve to an absolute residual tolerance.

    Raises:
        ChbSolverError: If CG stops before reaching atol.

    """
    rhs = rhs - np.mean(rhs)
    if not np.any(rhs):
        return np.zeros_like(rhs)
    iterations = 0

    def count(_: NDArray[np.float64]) -> None:
        nonlocal iterations
        iterations += 1

    solution, info = spla.cg(operator, rhs, rtol=0.0, atol=atol, maxiter=max_iter, M=preconditioner, callback=count)
    residual = float(np.linalg.norm(rhs - operator @ solution))
    if info != 0 or residual > atol:
        msg = f"CG for the {what} did not converge in {iterations} iterations (residual {residual:.3e})"
        raise ChbSolverError(msg, residual)
    LOGGER.debug("CG for the %s converged in %d iterations (residual %.3e)", what, iterations, residual)
    return solution - np.mean(solution)


def darcy_solve(force: FaceField, params: FlowSolveParams) -> tuple[FaceField, ScalarField]:
    """
    Solve the Darcy limit u = s grad pi + force, div u = 0, u.n = 0.

    Args:
        force: Face force with zero boundary-normal components.
        params: Solver settings; epsilon is ignored.

    Returns:
        The velocity and the zero-mean pressure.

    Raises:
        ChbInvariantError: For incompatible forces.
        ChbSolverError: If CG does not reach the tolerance.

    """
    check_compatible(force)
    grid = force.grid
    sign = params.pressure_sign
    rhs = sign * divergence(force).flat
    pressure = conjugate_gradient(
        _negative_laplacian(grid), rhs, divergence_tolerance(force, params), params.krylov_max_iter
    )
    pi = ScalarField.from_flat(grid, pressure)
    u = gradient(pi).scaled(sign) + force
    return u, pi


__all__ = ["check_compatible", "conjugate_gradient", "darcy_solve", "divergence_tolerance"]
