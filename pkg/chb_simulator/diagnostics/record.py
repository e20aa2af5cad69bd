"""Per-step diagnostics record."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Any

import numpy as np

from chb_simulator.constitutive import SourceSpec
from chb_simulator.data import MobilityFaceRule, ModelParams, SimulationState
from chb_simulator.flow import strain_norm_sq
from chb_simulator.grid import ScalarField, face_norm_sq, gradient, integral, laplacian_neumann, mean, norm_sq
from chb_simulator.nutrient import EntropyReport, entropy_dissipation, entropy_pair_report

from .energy import total_energy
from .norms import theorem_exponents
from .residuals import energy_inequality_residual, entropy_identity_residual, source_power


@dataclass(frozen=True)
class DiagnosticsRecord:
    """
    Structural quantities of one time level.

    Dissipation channels are grad_mu_sq, h_norm_sq, eps_du_sq and u_sq.
    energy_residual and source_terms refer to the step ending at this level
    and are 0 for the initial record.
    """

    step: int
    t: float
    dt: float
    energy: float
    mass_phi: float
    mass_ode_ref: float
    min_sigma: float
    max_abs_phi: float
    phi_sq: float
    grad_phi_sq: float
    lap_phi_sq: float
    mu_sq: float
    grad_mu_sq: float
    u_sq: float
    eps_du_sq: float
    h_norm_sq: float
    lnsigma_l1: float
    grad_lnsigma_sq: float
    log_sigma_sq: float
    source_terms: float
    energy_residual: float
    entropy_residual: float
    newton_iterations: int
    exponent_p0: float
    exponent_s: float
    exponent_r: float
    entropy: EntropyReport

    @property
    def mass_error(self) -> float:
        """|mass_phi - mass_ode_ref|."""
        return abs(self.mass_phi - self.mass_ode_ref)

    def as_row(self) -> dict[str, Any]:
        """Flat mapping in CSV column order, entropy entries prefixed; numpy scalars become builtins."""
        row = {item.name: getattr(self, item.name) for item in fields(self) if item.name != "entropy"}
        row.update({f"entropy_{key}": value for key, value in self.entropy.as_dict().items()})
        return {key: value.item() if isinstance(value, np.generic) else value for key, value in row.items()}


def make_record(
    state: SimulationState,
    mp: ModelParams,
    src: SourceSpec,
    *,
    dt: float,
    mass_ode_ref: float,
    rule: MobilityFaceRule = MobilityFaceRule.UPWIND,
    previous_state: SimulationState | None = None,
    previous_record: DiagnosticsRecord | None = None,
    newton_iterations: int = 0,
) -> DiagnosticsRecord:
    """
    Evaluate every diagnostic of a state.

    Args:
        state: Fields at the new time level.
        mp: Model constants.
        src: Source pair used by the step.
        dt: Step that produced the state, 0 for the initial record.
        mass_ode_ref: Reference mean from the scalar mass recursion.
        rule: Face rule of the chemotactic mobility used by the step.
        previous_state: Fields at the old time level.
        previous_record: Record of the old time level.
        newton_iterations: Newton iterations of the phase step.

    Returns:
        The record; the energy residual is filled when both previous
        arguments are given.

    """
    phi, mu, sigma, u = state.phi, state.mu, state.sigma, state.u
    grid = state.grid
    values = sigma.values
    positive = values > 0.0
    log_sigma = np.zeros(grid.shape)
    log_sigma[positive] = np.log(values[positive])
    entropy = entropy_pair_report(sigma, mp.sensitivity, mp.q_monitor)
    exponents = theorem_exponents(mp.p, mp.q_monitor)

    energy = total_energy(phi, sigma, mp)
    grad_mu_sq = face_norm_sq(gradient(mu))
    u_sq = face_norm_sq(u)
    eps_du_sq = mp.epsilon * strain_norm_sq(u) if mp.epsilon > 0 else 0.0
    h_norm_sq = entropy_dissipation(sigma, phi, mp.sensitivity, rule)

    record = DiagnosticsRecord(
        step=state.step,
        t=state.t,
        dt=dt,
        energy=energy,
        mass_phi=mean(phi),
        mass_ode_ref=mass_ode_ref,
        min_sigma=sigma.min(),
        max_abs_phi=phi.max_abs(),
        phi_sq=norm_sq(phi),
        grad_phi_sq=face_norm_sq(gradient(phi)),
        lap_phi_sq=norm_sq(laplacian_neumann(phi)),
        mu_sq=norm_sq(mu),
        grad_mu_sq=grad_mu_sq,
        u_sq=u_sq,
        eps_du_sq=eps_du_sq,
        h_norm_sq=h_norm_sq,
        lnsigma_l1=entropy.log_sigma_l1,
        grad_lnsigma_sq=entropy.grad_log_sigma_sq,
        log_sigma_sq=integral(ScalarField(grid, log_sigma * log_sigma)),
        source_terms=0.0,
        energy_residual=0.0,
        entropy_residual=entropy_identity_residual(phi, mu, sigma, mp),
        newton_iterations=newton_iterations,
        exponent_p0=exponents.p0,
        exponent_s=exponents.s,
        exponent_r=exponents.r,
        entropy=entropy,
    )
    if previous_state is None or previous_record is None or dt <= 0:
        return record
    source_terms = source_power(previous_state, state, src, mp)
    residual = energy_inequality_residual(previous_record, record, dt, source_terms)
    return replace(record, source_terms=source_terms, energy_residual=residual)


__all__ = ["DiagnosticsRecord", "make_record"]
