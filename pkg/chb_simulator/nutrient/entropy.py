"""Entropy functionals of the nutrient controlled by the a priori estimates."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from chb_simulator.const import DEFAULT_Q_MONITOR, FLOOR_EPS
from chb_simulator.constitutive import SensitivityParams, gamma_hat
from chb_simulator.exceptions import ChbInvariantError
from chb_simulator.grid import ScalarField, face_norm_sq, gradient, integral


@dataclass(frozen=True)
class EntropyReport:
    """
    Integrals and gradient norms of sigma at one time level.

    Attributes:
        gamma_hat_integral: int gamma_hat(sigma), with gamma_hat(0) = (p + 1) / p.
        sigma_p_integral: int sigma**p.
        grad_sigma_p_half_sq: ||grad sigma**(p/2)||**2.
        grad_log_sigma_sq: ||grad ln(sigma + 1e-300)||**2.
        log_sigma_l1: int |ln sigma| over cells with sigma > 0.
        q: Monitored exponent.
        sigma_q_integral: int sigma**q.
        grad_sigma_q_half_sq: ||grad sigma**(q/2)||**2.

    """

    gamma_hat_integral: float
    sigma_p_integral: float
    grad_sigma_p_half_sq: float
    grad_log_sigma_sq: float
    log_sigma_l1: float
    q: float
    sigma_q_integral: float
    grad_sigma_q_half_sq: float

    def as_dict(self) -> dict[str, float]:
        """Plain dict for CSV rows and summaries."""
        return asdict(self)


def _power_gradient_sq(sigma: ScalarField, exponent: float) -> float:
    return face_norm_sq(gradient(ScalarField(sigma.grid, sigma.values**exponent)))


def entropy_pair_report(sigma: ScalarField, sp: SensitivityParams, q: float = DEFAULT_Q_MONITOR) -> EntropyReport:
    """
    Evaluate the entropy functionals of a nonnegative nutrient.

    Args:
        sigma: Nutrient, sigma >= 0.
        sp: Sensitivity parameters; p fixes the entropy exponents.
        q: Exponent of the monitored sigma**q pair.

    Returns:
        The report; every entry is finite for sigma >= 0.

    Raises:
        ChbInvariantError: If sigma has a negative value.

    """
    values = sigma.values
    if float(np.min(values)) < 0.0:
        msg = f"Entropy report needs sigma >= 0, min={float(np.min(values)):.3e}"
        raise ChbInvariantError(msg)
    grid = sigma.grid
    positive = values > 0.0
    log_abs = np.zeros(grid.shape)
    log_abs[positive] = np.abs(np.log(values[positive]))
    return EntropyReport(
        gamma_hat_integral=integral(ScalarField(grid, gamma_hat(values, sp, allow_zero=True))),
        sigma_p_integral=integral(ScalarField(grid, values**sp.p)),
        grad_sigma_p_half_sq=_power_gradient_sq(sigma, 0.5 * sp.p),
        grad_log_sigma_sq=face_norm_sq(gradient(ScalarField(grid, np.log(values + FLOOR_EPS)))),
        log_sigma_l1=integral(ScalarField(grid, log_abs)),
        q=q,
        sigma_q_integral=integral(ScalarField(grid, values**q)),
        grad_sigma_q_half_sq=_power_gradient_sq(sigma, 0.5 * q),
    )


__all__ = ["EntropyReport", "entropy_pair_report"]
