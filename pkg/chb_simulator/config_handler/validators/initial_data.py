"""Checks of the initial phase field and nutrient."""

from __future__ import annotations

import numpy as np

from chb_simulator.constitutive import potential_F
from chb_simulator.data import ModelParams
from chb_simulator.grid import ScalarField, integral, mean

from .report import ValidationCheck


def check_phi0(phi0: ScalarField, mp: ModelParams) -> list[ValidationCheck]:
    """
    Mean strictly inside (-1, 1) and a finite potential energy.

    In exact mode F(phi0) is only finite when every cell value lies in the
    open interval; the regularized potential is total.
    """
    m = mean(phi0)
    checks = [ValidationCheck("phi0_mean", bool(abs(m) < 1.0), f"|mean(phi0)| = {abs(m):.6g} must be < 1")]
    if not np.all(np.isfinite(phi0.values)):
        checks.append(ValidationCheck("phi0_finite", False, "phi0 has non-finite values"))
        return checks
    sup = phi0.max_abs()
    if mp.n is None and not sup < 1.0:
        checks.append(ValidationCheck("phi0_potential", False, f"max|phi0| = {sup:.6g}; exact F(phi0) needs < 1"))
        return checks
    energy = float(np.sum(potential_F(phi0.values, mp.potential)) * phi0.grid.cell_volume)
    checks.append(
        ValidationCheck("phi0_potential", bool(np.isfinite(energy)), f"integral of F(phi0) = {energy:.6g}")
    )
    return checks


def check_sigma0(sigma0: ScalarField, mp: ModelParams) -> list[ValidationCheck]:
    """Positivity, an integrable logarithm and sigma0 in L^q for q = q_monitor."""
    values = sigma0.values
    if not np.all(np.isfinite(values)):
        return [ValidationCheck("sigma0_finite", False, "sigma0 has non-finite values")]
    low = sigma0.min()
    checks = [ValidationCheck("sigma0_positive", bool(low > 0.0), f"min(sigma0) = {low:.6g} must be > 0")]
    if low <= 0.0:
        return checks
    log_l1 = integral(ScalarField(sigma0.grid, np.abs(np.log(values))))
    lq = integral(ScalarField(sigma0.grid, values**mp.q_monitor))
    checks += [
        ValidationCheck("sigma0_log_integrable", bool(np.isfinite(log_l1)), f"integral |ln sigma0| = {log_l1:.6g}"),
        ValidationCheck(
            "sigma0_lq", bool(np.isfinite(lq)), f"integral sigma0^{mp.q_monitor:g} = {lq:.6g}"
        ),
    ]
    return checks


__all__ = ["check_phi0", "check_sigma0"]
