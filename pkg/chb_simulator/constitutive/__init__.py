"""
Scalar constitutive laws and assumption validators.

Package structure:
- params.py: PotentialParams (lambda, n, q0, penalty power) and SensitivityParams (p, chi)
- potential.py: logarithmic potential F, f = F', beta, with regularized dispatch
- regularization.py: Yosida approximation, penalty j_n, beta_n, F_n, growth envelope,
  truncation operator
- sensitivity.py: alpha, gamma, gamma_hat
- sources.py: SourceSpec, built-in source families, sampled validator
- tabulate.py: CSV tabulation for plot scripts

Every function is vectorized over numpy arrays and raises ChbDomainError
for arguments outside its domain.
"""

from __future__ import annotations

from .params import PotentialParams, SensitivityParams
from .potential import beta, beta_derivative, monotone_part, monotone_part_derivative, potential_F, potential_f
from .regularization import (
    EnvelopeFit,
    beta_n,
    beta_n_derivative,
    beta_n_primitive,
    coercivity_envelope,
    penalty_j,
    penalty_primitive,
    regularized_potential,
    truncation,
    yosida_beta,
    yosida_primitive,
    yosida_primitive_by_quadrature,
)
from .sensitivity import ALPHA_PRIME_SUP, alpha, alpha_derivative, gamma, gamma_derivative, gamma_hat
from .sources import BUILTIN_SOURCES, SourceReport, SourceSpec, builtin_sources, validate_sources
from .tabulate import tabulate_constitutive, write_constitutive_table

__all__ = [
    "ALPHA_PRIME_SUP",
    "BUILTIN_SOURCES",
    "EnvelopeFit",
    "PotentialParams",
    "SensitivityParams",
    "SourceReport",
    "SourceSpec",
    "alpha",
    "alpha_derivative",
    "beta",
    "beta_derivative",
    "beta_n",
    "beta_n_derivative",
    "beta_n_primitive",
    "builtin_sources",
    "coercivity_envelope",
    "gamma",
    "gamma_derivative",
    "gamma_hat",
    "monotone_part",
    "monotone_part_derivative",
    "penalty_j",
    "penalty_primitive",
    "potential_F",
    "potential_f",
    "regularized_potential",
    "tabulate_constitutive",
    "truncation",
    "validate_sources",
    "write_constitutive_table",
    "yosida_beta",
    "yosida_primitive",
    "yosida_primitive_by_quadrature",
]
