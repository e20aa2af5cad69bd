"""
Checks of the model and source assumptions.

The blocking checks are the ones the well-posedness results need: the
source bound H / ell < 1 and the sampled bounds of the source pair. Whether
p lies in the range covered by the three-dimensional theory and whether q0
dominates the conjugate exponent of p are advisory.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

from chb_simulator.const import CONF_H_BOUND, CONF_NAME
from chb_simulator.constitutive import P_THREE_D_MIN, SourceSpec, validate_sources
from chb_simulator.constitutive.sources import SOURCE_ZERO
from chb_simulator.data import ModelParams

from .report import ValidationCheck


def check_source_bound(sources: Mapping[str, Any], ell: float) -> ValidationCheck:
    """
    H / ell < 1, the bound that keeps the phase mean away from the pure phases.

    Example:
        >>> check_source_bound({"name": "logistic_h_saturating", "H": 1.5}, 1.0).passed
        False

    """
    h_bound = float(sources.get(CONF_H_BOUND, 0.0)) if sources.get(CONF_NAME) != SOURCE_ZERO else 0.0
    ratio = h_bound / ell
    return ValidationCheck(
        "H_over_ell",
        ratio < 1.0,
        f"source bound H/ell = {ratio:.4g} (H={h_bound}, ell={ell}) must be < 1",
    )


def check_source_pair(spec: SourceSpec, seed: int = 0) -> list[ValidationCheck]:
    """Sampled bounds of the source pair, one check per bound."""
    report = validate_sources(spec, seed=seed)
    return [
        ValidationCheck(
            f"source_{check.name}",
            check.passed,
            f"{spec.name}: observed {check.observed:.4g} against bound {check.bound:.4g}",
        )
        for check in report.checks
    ]


def check_model(mp: ModelParams) -> list[ValidationCheck]:
    """Advisory checks on p and q0."""
    sensitivity = mp.sensitivity
    checks = [
        ValidationCheck(
            "p_three_d_range",
            sensitivity.in_three_d_range,
            f"p = {mp.p} {'inside' if sensitivity.in_three_d_range else 'outside'} ({P_THREE_D_MIN:.4f}, 2]",
            advisory=True,
        )
    ]
    if mp.n is not None:
        dominates = mp.potential.dominates_conjugate(mp.p)
        checks.append(
            ValidationCheck(
                "q0_dominates_conjugate",
                dominates,
                f"q0 = {mp.q0} against p' = {sensitivity.conjugate:.4g}",
                advisory=True,
            )
        )
    return checks


__all__ = ["check_model", "check_source_bound", "check_source_pair"]
