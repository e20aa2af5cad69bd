"""
Nutrient step in entropy form.

Package structure:
- flux.py: cross_flux, the chemotactic face mobility and the H-norm dissipation
- step.py: sigma_step, its parameters and the positivity CFL bound
- entropy.py: entropy_pair_report
"""

from __future__ import annotations

from .entropy import EntropyReport, entropy_pair_report
from .flux import chemotactic_flux, chemotactic_mobility, cross_flux, entropy_dissipation
from .step import NutrientStepParams, max_stable_dt, outflow_rate, sigma_step

__all__ = [
    "EntropyReport",
    "NutrientStepParams",
    "chemotactic_flux",
    "chemotactic_mobility",
    "cross_flux",
    "entropy_dissipation",
    "entropy_pair_report",
    "max_stable_dt",
    "outflow_rate",
    "sigma_step",
]
