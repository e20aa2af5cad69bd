"""
One implicit step of the Cahn-Hilliard-Oono pair.

The discrete system solved for (phi, mu) at the new time level is

    phi - phi_old + dt div(phi_old_face u) - dt L mu = dt (h(sigma_old, phi_old) + g) - dt ell phi
    mu = (1/n) L^2 phi - L phi + beta~(phi) - lambda phi_old - chi sigma_old

with L the Neumann Laplacian, beta~ = beta (exact) or beta_n (regularized,
where the bilaplacian term is present) and g an optional manufactured source.
The convex part is implicit and the concave part explicit, which makes the
pure Cahn-Hilliard core energy stable for every dt.

Newton eliminates the mu increment and solves the reduced phi system with
ILU-preconditioned GMRES, falling back to a sparse LU factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from chb_simulator.const import (
    ADVECTION_CFL,
    DEFAULT_LINEAR_TOL,
    DEFAULT_NEWTON_MAX_ITER,
    DEFAULT_NEWTON_TOL,
    LOGGER,
    NEWTON_STEP_TOL,
)
from chb_simulator.constitutive import SourceSpec, monotone_part, monotone_part_derivative, potential_f
from chb_simulator.data import AdvectionScheme, ModelParams
from chb_simulator.exceptions import ChbConfigurationError, ChbStepError
from chb_simulator.grid import (
    FaceField,
    ScalarField,
    bilaplacian_matrix,
    check_same_grid,
    divergence,
    face_average,
    face_product,
    laplacian_matrix,
    upwind_values,
)

_ARMIJO = 1e-4
_MAX_BACKTRACK = 40
_INTERIOR_MARGIN = 1e-14
_GMRES_RESTART = 60


@dataclass(frozen=True)
class CHStepParams:
    """
    Numerical parameters of ch_step.

    Attributes:
        dt: Time step.
        newton_tol: Scaled tolerance on the residual sup norm.
        newton_max_iter: Newton iteration cap.
        linear_tol: Relative tolerance of the inner Krylov solve.
        advection: Face value of phi in the transport term.

    """

    dt: float
    newton_tol: float = DEFAULT_NEWTON_TOL
    newton_max_iter: int = DEFAULT_NEWTON_MAX_ITER
    linear_tol: float = DEFAULT_LINEAR_TOL
    advection: AdvectionScheme = AdvectionScheme.UPWIND

    def __post_init__(self) -> None:
        """Validate positivity of step and tolerances."""
        if not self.dt > 0:
            msg = f"dt must be positive, got {self.dt}"
            raise ChbConfigurationError(msg)
        if self.newton_tol <= 0 or self.linear_tol <= 0 or self.newton_max_iter < 1:
            msg = "Newton and linear tolerances must be positive and newton_max_iter >= 1"
            raise ChbConfigurationError(msg)


class CHStepResult(NamedTuple):
    """New phase field and chemical potential with solver statistics."""

    phi: ScalarField
    mu: ScalarField
    iterations: int
    residuals: list[float]


def advective_flux(phi: ScalarField, u: FaceField, scheme: AdvectionScheme) -> FaceField:
    """Conservative transport flux phi_face * u."""
    faces = upwind_values(phi, u) if scheme is AdvectionScheme.UPWIND else face_average(phi)
    return face_product(faces, u)


def chemical_potential(phi: ScalarField, sigma: ScalarField, mp: ModelParams) -> ScalarField:
    """
    Discrete chemical potential mu = (1/n) L**2 phi - L phi + f(phi) - chi sigma at one time level.

    Used for the initial mu of a run, where no previous level exists.
    """
    check_same_grid(phi.grid, sigma.grid)
    grid = phi.grid
    stiffness = -laplacian_matrix(grid)
    if mp.n is not None:
        stiffness = stiffness + bilaplacian_matrix(grid) / mp.n
    values = stiffness @ phi.flat + potential_f(phi.flat, mp.potential) - mp.chi * sigma.flat
    return ScalarField.from_flat(grid, values)


def check_advection_cfl(u: FaceField, dt: float, safety: float = ADVECTION_CFL) -> None:
    """
    Enforce dt <= safety * min(hx, hy) / max|u|.

    Raises:
        ChbStepError: If the bound is violated; halving dt is the remedy.

    """
    speed = u.max_abs()
    if speed == 0.0:
        return
    limit = safety * min(u.grid.hx, u.grid.hy) / speed
    if dt > limit:
        msg = f"Advection CFL violated: dt={dt:.3e} > {limit:.3e} (max|u|={speed:.3e})"
        raise ChbStepError(msg)


class _CHSystem:
    """Residual and Jacobian of one step, with everything explicit precomputed."""

    def __init__(
        self,
        phi_old: ScalarField,
        sigma_old: ScalarField,
        u: FaceField,
        src: SourceSpec,
        mp: ModelParams,
        step_params: CHStepParams,
        extra_source: ScalarField | None,
    ) -> None:
        grid = phi_old.grid
        self.grid = grid
        self.dt = step_params.dt
        self.ell = mp.ell
        self.potential = mp.potential
        self.lap = laplacian_matrix(grid)
        self.inv_n = 0.0 if mp.n is None else 1.0 / mp.n
        self.stiffness = (self.inv_n * bilaplacian_matrix(grid) - self.lap).tocsr()
        self.identity = sp.identity(grid.size, format="csr")
        self.lap_stiffness = (self.lap @ self.stiffness).tocsr()

        transport = divergence(advective_flux(phi_old, u, step_params.advection)).flat
        source = np.broadcast_to(src.h(sigma_old.values, phi_old.values), grid.shape).ravel()
        if extra_source is not None:
            source = source + extra_source.flat
        self.source_mean = float(np.mean(source))
        self.phi_old = phi_old.flat
        # Everything in the phi equation that does not depend on the unknowns.
        self.phi_rhs = self.phi_old - self.dt * transport + self.dt * source
        # Explicit part of the chemical potential.
        self.mu_explicit = -mp.lam * phi_old.flat - mp.chi * sigma_old.flat

    def chemical_potential(self, phi: NDArray[np.float64]) -> NDArray[np.float64]:
        return self.stiffness @ phi + monotone_part(phi, self.potential) + self.mu_explicit

    def residual(self, phi: NDArray[np.float64], mu: NDArray[np.float64]) -> tuple[NDArray, NDArray]:
        r1 = (1.0 + self.dt * self.ell) * phi - self.dt * (self.lap @ mu) - self.phi_rhs
        r2 = mu - self.chemical_potential(phi)
        return r1, r2

    def reduced_matrix(self, phi: NDArray[np.float64]) -> sp.csc_matrix:
        curvature = self.lap @ sp.diags(monotone_part_derivative(phi, self.potential))
        matrix = (1.0 + self.dt * self.ell) * self.identity - self.dt * (self.lap_stiffness + curvature)
        return matrix.tocsc()

    def mu_increment(self, phi: NDArray, r2: NDArray, dphi: NDArray) -> NDArray[np.float64]:
        jac_mu = self.stiffness @ dphi + monotone_part_derivative(phi, self.potential) * dphi
        return -r2 + jac_mu


def _solve_reduced(matrix: sp.csc_matrix, rhs: NDArray[np.float64], tol: float) -> NDArray[np.float64]:
    """ILU-preconditioned GMRES with a sparse LU fallback."""
    try:
        ilu = spla.spilu(matrix, drop_tol=1e-6, fill_factor=20)
        preconditioner = spla.LinearOperator(matrix.shape, ilu.solve)
        solution, info = spla.gmres(
            matrix, rhs, rtol=tol, atol=0.0, restart=_GMRES_RESTART, maxiter=20, M=preconditioner
        )
        if info == 0 and np.all(np.isfinite(solution)):
            return solution
        LOGGER.debug("GMRES returned info=%s, falling back to sparse LU", info)
    except RuntimeError as err:
        LOGGER.debug("ILU factorization failed (%s), falling back to sparse LU", err)
    return spla.splu(matrix).solve(rhs)


def _max_step_inside(phi: NDArray[np.float64], dphi: NDArray[np.float64]) -> float:
    """Largest theta in (0, 1] keeping |phi + theta dphi| < 1, halving from 1."""
    theta = 1.0
    bound = 1.0 - _INTERIOR_MARGIN
    for _ in range(_MAX_BACKTRACK):
        if np.all(np.abs(phi + theta * dphi) < bound):
            return theta
        theta *= 0.5
    return 0.0


def ch_step(
    phi: ScalarField,
    sigma: ScalarField,
    u: FaceField,
    src: SourceSpec,
    mp: ModelParams,
    step_params: CHStepParams,
    extra_source: ScalarField | None = None,
) -> CHStepResult:
    """
    Advance (phi, mu) by one time step.

    Args:
        phi: Phase field at the old time level; |phi| < 1 in exact mode.
        sigma: Nutrient at the old time level.
        u: Divergence-free velocity with zero normal component.
        src: Source pair; h is evaluated explicitly at (sigma, phi).
        mp: Model constants; mp.n selects exact or regularized mode.
        step_params: Step parameters.
        extra_source: Additional right-hand side of the phi equation.

    Returns:
        The new fields and the Newton residual history.

    Raises:
        ChbStepError: On CFL violation, failed line search or Newton
            nonconvergence; a smaller dt may succeed.
        ChbDomainError: If phi leaves (-1, 1) on entry in exact mode.

    """
    check_same_grid(phi.grid, sigma.grid)
    check_same_grid(phi.grid, u.grid)
    check_advection_cfl(u, step_params.dt)

    system = _CHSystem(phi, sigma, u, src, mp, step_params, extra_source)
    exact = mp.n is None
    x_phi = phi.flat.copy()
    x_mu = system.chemical_potential(x_phi)
    r1, r2 = system.residual(x_phi, x_mu)
    norm = float(np.hypot(np.linalg.norm(r1), np.linalg.norm(r2)))
    history = [float(max(np.max(np.abs(r1)), np.max(np.abs(r2))))]

    for iteration in range(1, step_params.newton_max_iter + 1):
        scale = 1.0 + np.max(np.abs(monotone_part(x_phi, system.potential))) + np.max(np.abs(x_mu))
        if history[-1] <= step_params.newton_tol * scale:
            return _finish(system, x_phi, x_mu, mp, history, iteration - 1)

        matrix = system.reduced_matrix(x_phi)
        rhs = -r1 - system.dt * (system.lap @ r2)
        dphi = _solve_reduced(matrix, rhs, step_params.linear_tol)
        dmu = system.mu_increment(x_phi, r2, dphi)

        theta = _max_step_inside(x_phi, dphi) if exact else 1.0
        if theta == 0.0:
            msg = "Newton step cannot stay inside (-1, 1)"
            raise ChbStepError(msg, history)

        for _ in range(_MAX_BACKTRACK):
            trial_phi = x_phi + theta * dphi
            trial_mu = x_mu + theta * dmu
            t1, t2 = system.residual(trial_phi, trial_mu)
            trial_norm = float(np.hypot(np.linalg.norm(t1), np.linalg.norm(t2)))
            if trial_norm <= (1.0 - _ARMIJO * theta) * norm or trial_norm == 0.0:
                break
            theta *= 0.5
        else:
            if float(np.max(np.abs(dphi))) <= NEWTON_STEP_TOL * (1.0 + np.max(np.abs(x_phi))):
                return _finish(system, x_phi, x_mu, mp, history, iteration)
            msg = f"Line search failed at Newton iteration {iteration} (residual {history[-1]:.3e})"
            raise ChbStepError(msg, history)

        x_phi, x_mu, r1, r2, norm = trial_phi, trial_mu, t1, t2, trial_norm
        history.append(float(max(np.max(np.abs(r1)), np.max(np.abs(r2)))))
        LOGGER.debug("Newton iteration %d: residual %.3e (theta=%.3g)", iteration, history[-1], theta)

        if theta == 1.0 and float(np.max(np.abs(dphi))) <= NEWTON_STEP_TOL * (1.0 + np.max(np.abs(x_phi))):
            return _finish(system, x_phi, x_mu, mp, history, iteration)

    scale = 1.0 + np.max(np.abs(monotone_part(x_phi, system.potential))) + np.max(np.abs(x_mu))
    if history[-1] <= step_params.newton_tol * scale:
        return _finish(system, x_phi, x_mu, mp, history, step_params.newton_max_iter)
    msg = f"Newton did not converge in {step_params.newton_max_iter} iterations (residual {history[-1]:.3e})"
    raise ChbStepError(msg, history)


def _finish(
    system: _CHSystem,
    phi: NDArray[np.float64],
    mu: NDArray[np.float64],
    mp: ModelParams,
    history: list[float],
    iterations: int,
) -> CHStepResult:
    """Pin the mean of phi to the discrete mass identity and wrap the result."""
    dt = system.dt
    target = (float(np.mean(system.phi_old)) + dt * system.source_mean) / (1.0 + dt * mp.ell)
    shifted = phi + (target - float(np.mean(phi)))
    if mp.n is not None or np.all(np.abs(shifted) < 1.0 - _INTERIOR_MARGIN):
        phi = shifted
    return CHStepResult(
        ScalarField.from_flat(system.grid, phi),
        ScalarField.from_flat(system.grid, mu),
        iterations,
        history,
    )


__all__ = ["CHStepParams", "CHStepResult", "advective_flux", "ch_step", "check_advection_cfl", "chemical_potential"]
