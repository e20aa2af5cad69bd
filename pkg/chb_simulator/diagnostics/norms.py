"""Time-space norms bounded by the existence results, with their exponents."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING

import numpy as np

from chb_simulator.data import ModelParams
from chb_simulator.exceptions import ChbConfigurationError

if TYPE_CHECKING:
    from .record import DiagnosticsRecord


@dataclass(frozen=True)
class TheoremExponents:
    """
    Integrability exponents of the phase field, nutrient and pressure.

    Attributes:
        p0: min((18 q - 6 p) / (12 - 5 p), 4), time exponent of ||phi||_H2.
        s: min(6 p / (12 - 5 p), p).
        r: max(4, p / (p - 1)).

    """

    p0: float
    s: float
    r: float

    def as_dict(self) -> dict[str, float]:
        """Keys P0, S and R as printed in reports."""
        return {"P0": self.p0, "S": self.s, "R": self.r}


def theorem_exponents(p: float, q: float) -> TheoremExponents:
    """
    Exponents for sensitivity p in (1, 2] and nutrient integrability q.

    Example:
        >>> theorem_exponents(2.0, 2.0)
        TheoremExponents(p0=4.0, s=2.0, r=4.0)

    """
    if not 1 < p <= 2 or q <= 0:
        msg = f"Exponents need p in (1, 2] and q > 0, got p={p}, q={q}"
        raise ChbConfigurationError(msg)
    denominator = 12.0 - 5.0 * p
    return TheoremExponents(
        p0=min((18.0 * q - 6.0 * p) / denominator, 4.0),
        s=min(6.0 * p / denominator, p),
        r=max(4.0, p / (p - 1.0)),
    )


def _time_norm(dts: np.ndarray, values: np.ndarray, exponent: float) -> float:
    """Right-endpoint Riemann sum (sum dt |v|**exponent)**(1 / exponent)."""
    return float(np.sum(dts * np.abs(values) ** exponent) ** (1.0 / exponent))


def theorem_norm_report(history: Sequence[DiagnosticsRecord], mp: ModelParams) -> dict[str, float]:
    """
    Discrete norms of a run controlled by the regularity results.

    Values are space norms per record; time integrals use the step of each
    record after the first.

    Args:
        history: Records of one run, initial record first.
        mp: Model constants; p and q_monitor fix the exponents.

    Returns:
        Norms keyed by name together with P0, S and R.

    Raises:
        ChbConfigurationError: If the history is empty.

    """
    if not history:
        msg = "Norm report needs at least one record"
        raise ChbConfigurationError(msg)
    exponents = theorem_exponents(mp.p, mp.q_monitor)
    q = mp.q_monitor

    def column(name: str) -> np.ndarray:
        return np.array([getattr(record, name) for record in history], dtype=np.float64)

    dts = column("dt")[1:]
    v_sq = column("phi_sq") + column("grad_phi_sq")
    h2_sq = v_sq + column("lap_phi_sq")
    sigma_q = np.array([record.entropy.sigma_q_integral for record in history])
    grad_sigma_q = np.array([record.entropy.grad_sigma_q_half_sq for record in history])

    report = {
        "phi_Linf_V": float(np.sqrt(np.max(v_sq))),
        "phi_LP0_H2": _time_norm(dts, np.sqrt(h2_sq[1:]), exponents.p0),
        "mu_L2_V": _time_norm(dts, np.sqrt((column("mu_sq") + column("grad_mu_sq"))[1:]), 2.0),
        "sigma_q_half_L2_V": _time_norm(dts, np.sqrt((sigma_q + grad_sigma_q)[1:]), 2.0),
        "sigma_Linf_Lq": float(np.max(sigma_q) ** (1.0 / q)),
        "u_L2_L2": _time_norm(dts, np.sqrt(column("u_sq")[1:]), 2.0),
        "H_L2_L2": _time_norm(dts, np.sqrt(np.maximum(column("h_norm_sq")[1:], 0.0)), 2.0),
        "ln_sigma_L2_V": _time_norm(dts, np.sqrt((column("log_sigma_sq") + column("grad_lnsigma_sq"))[1:]), 2.0),
        "ln_sigma_Linf_L1": float(np.max(column("lnsigma_l1"))),
        "sup_abs_phi": float(np.max(column("max_abs_phi"))),
    }
    report.update(exponents.as_dict())
    return report


__all__ = ["TheoremExponents", "theorem_exponents", "theorem_norm_report"]
