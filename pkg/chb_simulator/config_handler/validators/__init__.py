"""
Assumption validators run before a simulation starts.

Package structure:
- assumptions.py: Source bound H / ell < 1, sampled source bounds, advisory
  range checks on p and q0
- initial_data.py: Initial phase mean, finite potential energy, positive
  nutrient with integrable logarithm
- report.py: ValidationCheck and ValidationReport
"""

from __future__ import annotations

from .assumptions import check_model, check_source_bound, check_source_pair
from .initial_data import check_phi0, check_sigma0
from .report import ValidationCheck, ValidationReport

__all__ = [
    "ValidationCheck",
    "ValidationReport",
    "check_model",
    "check_phi0",
    "check_sigma0",
    "check_source_bound",
    "check_source_pair",
]
