"""
Cahn-Hilliard-Oono step and the scalar mass reference.

Package structure:
- step.py: ch_step (Newton on the coupled phi, mu system), its parameters and chemical_potential
- mass.py: mass_ode_reference, the single-step mass_ode_step and mean_bound_delta
"""

from __future__ import annotations

from .mass import mass_ode_reference, mass_ode_step, mean_bound_delta
from .step import CHStepParams, CHStepResult, advective_flux, ch_step, check_advection_cfl, chemical_potential

__all__ = [
    "CHStepParams",
    "CHStepResult",
    "advective_flux",
    "ch_step",
    "check_advection_cfl",
    "chemical_potential",
    "mass_ode_reference",
    "mass_ode_step",
    "mean_bound_delta",
]
