"""
Per-step residuals of the energy balance and of the phase entropy identity.

The energy balance of the coupled system reads

    dE/dt + ||grad mu||**2 + ||H||**2 + eps ||Du||**2 + ||u||**2
        = <b, gamma(sigma) - chi phi> + <h - ell phi, mu>

and testing the chemical potential equation with -L phi gives

    ||L phi||**2 [+ 1/n ||grad L phi||**2]
        = -<grad f(phi), grad phi> + <grad phi, grad mu> + chi <grad phi, grad sigma>.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from chb_simulator.const import FLOOR_EPS
from chb_simulator.constitutive import SourceSpec, gamma, potential_f
from chb_simulator.data import ModelParams, SimulationState
from chb_simulator.grid import ScalarField, face_inner_product, face_norm_sq, gradient, inner_product, laplacian_neumann

if TYPE_CHECKING:
    from .record import DiagnosticsRecord


def dissipation(record: DiagnosticsRecord) -> float:
    """D = ||grad mu||**2 + ||H||**2 + eps ||Du||**2 + ||u||**2 of one record."""
    return record.grad_mu_sq + record.h_norm_sq + record.eps_du_sq + record.u_sq


def source_power(previous: SimulationState, current: SimulationState, src: SourceSpec, mp: ModelParams) -> float:
    """
    Right-hand side of the energy balance for the step previous -> current.

    Sources are taken as the scheme applies them: h and the explicit part
    b + b0 sigma at the old level, the decay -b0 sigma at the new level.
    gamma is evaluated at sigma + 1e-300.
    """
    sigma_old, phi_old = previous.sigma.values, previous.phi.values
    sigma_new, phi_new = current.sigma.values, current.phi.values
    grid = current.grid
    b_eff = src.b(sigma_old, phi_old) + src.b0 * (sigma_old - sigma_new)
    entropy_var = gamma(sigma_new + FLOOR_EPS, mp.sensitivity) - mp.chi * phi_new
    h_eff = np.broadcast_to(src.h(sigma_old, phi_old), grid.shape) - mp.ell * phi_new
    return inner_product(ScalarField(grid, np.broadcast_to(b_eff, grid.shape)), ScalarField(grid, entropy_var)) + (
        inner_product(ScalarField(grid, h_eff), current.mu)
    )


def energy_inequality_residual(
    record_prev: DiagnosticsRecord, record_curr: DiagnosticsRecord, dt: float, source_terms: float
) -> float:
    """
    r = (E_new - E_old) / dt + D_new - R.

    Args:
        record_prev: Record of the old time level.
        record_curr: Record of the new time level.
        dt: Step between them.
        source_terms: R, as computed by source_power.

    Returns:
        The residual; with zero sources r <= C dt on smooth states.

    """
    return (record_curr.energy - record_prev.energy) / dt + dissipation(record_curr) - source_terms


def entropy_identity_residual(phi: ScalarField, mu: ScalarField, sigma: ScalarField, mp: ModelParams) -> float:
    """
    Left minus right side of the identity obtained by testing with -L phi.

    Exact (to roundoff) when mu is the discrete chemical potential of phi;
    O(h**2) when mu is sampled from a smooth closed form.
    """
    lap = laplacian_neumann(phi)
    grad_phi = gradient(phi)
    left = inner_product(lap, lap)
    if mp.n is not None:
        left += face_norm_sq(gradient(lap)) / mp.n
    f_phi = ScalarField(phi.grid, potential_f(phi.values, mp.potential))
    right = (
        -face_inner_product(gradient(f_phi), grad_phi)
        + face_inner_product(grad_phi, gradient(mu))
        + mp.chi * face_inner_product(grad_phi, gradient(sigma))
    )
    return left - right


__all__ = ["dissipation", "energy_inequality_residual", "entropy_identity_residual", "source_power"]
