"""
State preparation and output helpers for the step loop.

Use cases:
- Building the initial state (mu from the discrete chemical potential, u and
  pi from a flow solve)
- Mean phase source that drives the scalar mass reference
- Snapshot naming and cadence decisions
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from chb_simulator.cahn_hilliard import chemical_potential
from chb_simulator.constitutive import SourceSpec
from chb_simulator.data import ManufacturedForcing, SimConfig, SimulationState
from chb_simulator.flow import korteweg_force, solve_flow
from chb_simulator.grid import FaceField, ScalarField, mean, write_field

SNAPSHOT_FIELDS = ("phi", "mu", "sigma", "pi")


def flow_from_fields(
    config: SimConfig,
    phi: ScalarField,
    mu: ScalarField,
    sigma: ScalarField,
    forcing: ManufacturedForcing | None = None,
    t: float = 0.0,
) -> tuple[FaceField, ScalarField]:
    """
    Velocity and pressure driven by the Korteweg force of (phi, mu, sigma).

    Returns zero fields when the flow is switched off.
    """
    grid = config.grid
    if not config.flow_enabled:
        return FaceField.zeros(grid), ScalarField.zeros(grid)
    force = korteweg_force(phi, mu, sigma, config.model.chi)
    if forcing is not None:
        force = force + forcing.force(t).with_zero_normal()
    return solve_flow(force, config.flow)


def build_initial_state(config: SimConfig, forcing: ManufacturedForcing | None = None) -> SimulationState:
    """Initial fields with mu = mu(phi0, sigma0) and the flow they drive."""
    phi, sigma = config.phi0, config.sigma0
    mu = chemical_potential(phi, sigma, config.model)
    u, pi = flow_from_fields(config, phi, mu, sigma, forcing, 0.0)
    return SimulationState(t=0.0, phi=phi, mu=mu, sigma=sigma, u=u, pi=pi, step=0)


def mean_phase_source(
    state: SimulationState, src: SourceSpec, forcing: ManufacturedForcing | None, t_new: float
) -> float:
    """Domain mean of the explicit phase source applied by the step from state."""
    h = np.broadcast_to(src.h(state.sigma.values, state.phi.values), state.grid.shape)
    total = float(np.mean(h))
    if forcing is not None:
        total += mean(forcing.phase(t_new))
    return total


def is_due(step: int, cadence: int, *, final: bool) -> bool:
    """Whether output with the given cadence is due at step; cadence 0 means initial and final only."""
    if final or step == 0:
        return True
    return cadence > 0 and step % cadence == 0


def snapshot_path(directory: Path, name: str, step: int, *, binary: bool) -> Path:
    """snapshots/<name>_<step>.bin or .txt inside the run directory."""
    suffix = "bin" if binary else "txt"
    return directory / "snapshots" / f"{name}_{step:06d}.{suffix}"


def write_snapshots(directory: Path, state: SimulationState, *, binary: bool) -> list[Path]:
    """Write the scalar fields of a state."""
    return [
        write_field(snapshot_path(directory, name, state.step, binary=binary), getattr(state, name), name, state.t, binary=binary)
        for name in SNAPSHOT_FIELDS
    ]


__all__ = [
    "SNAPSHOT_FIELDS",
    "build_initial_state",
    "flow_from_fields",
    "is_due",
    "mean_phase_source",
    "snapshot_path",
    "write_snapshots",
]
