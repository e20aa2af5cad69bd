"""
Chemotactic sensitivity and entropy variables.

alpha(s) = s / (1 + s**(p - 1)) is degenerate at zero and grows like s**(2 - p).
gamma is the primitive of 1 / alpha normalized by gamma(1) = 0, and gamma_hat
the primitive of gamma normalized by gamma_hat(1) = 0.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from chb_simulator.exceptions import ChbDomainError

from .params import SensitivityParams

# Sup of alpha' over s >= 0, attained at s = 0 for every p in (1, 2].
ALPHA_PRIME_SUP = 1.0


def _check(s: NDArray[np.float64], *, strict: bool, what: str) -> None:
    bad = ~(s > 0.0) if strict else ~(s >= 0.0)
    if np.any(bad):
        value = float(s[bad].flat[0])
        bound = "> 0" if strict else ">= 0"
        msg = f"{what} needs s {bound}, got s={value}"
        raise ChbDomainError(msg, value)


def alpha(s: ArrayLike, sp: SensitivityParams) -> NDArray[np.float64]:
    """Sensitivity alpha(s) = s / (1 + s**(p - 1)), alpha(0) = 0."""
    s_arr = np.asarray(s, dtype=np.float64)
    _check(s_arr, strict=False, what="alpha")
    return s_arr / (1.0 + s_arr ** (sp.p - 1.0))


def alpha_derivative(s: ArrayLike, sp: SensitivityParams) -> NDArray[np.float64]:
    """alpha'(s) = (1 + (2 - p) s**(p - 1)) / (1 + s**(p - 1))**2, bounded by 1."""
    s_arr = np.asarray(s, dtype=np.float64)
    _check(s_arr, strict=False, what="alpha'")
    power = s_arr ** (sp.p - 1.0)
    return (1.0 + sp.a * power) / (1.0 + power) ** 2


def inverse_alpha(s: ArrayLike, sp: SensitivityParams) -> NDArray[np.float64]:
    """1 / alpha(s) = 1 / s + s**(p - 2), which is also gamma'(s)."""
    s_arr = np.asarray(s, dtype=np.float64)
    _check(s_arr, strict=True, what="1/alpha")
    return 1.0 / s_arr + s_arr ** (sp.p - 2.0)


gamma_derivative = inverse_alpha


def gamma(s: ArrayLike, sp: SensitivityParams) -> NDArray[np.float64]:
    """Entropy variable gamma(s) = ln s + (s**(p - 1) - 1) / (p - 1)."""
    s_arr = np.asarray(s, dtype=np.float64)
    _check(s_arr, strict=True, what="gamma")
    log_s = np.log(s_arr)
    return log_s + np.expm1((sp.p - 1.0) * log_s) / (sp.p - 1.0)


def gamma_hat(s: ArrayLike, sp: SensitivityParams, *, allow_zero: bool = False) -> NDArray[np.float64]:
    """
    Entropy density gamma_hat(s) = s**p / (p (p - 1)) + s ln s - p s / (p - 1) + (p + 1) / p.

    Args:
        s: Argument(s).
        sp: Sensitivity parameters.
        allow_zero: Accept s = 0 and return the limit (p + 1) / p there.

    Raises:
        ChbDomainError: If s <= 0 (or s < 0 with allow_zero).

    """
    s_arr = np.asarray(s, dtype=np.float64)
    _check(s_arr, strict=not allow_zero, what="gamma_hat")
    p = sp.p
    return s_arr**p / (p * (p - 1.0)) + special.xlogy(s_arr, s_arr) - p * s_arr / (p - 1.0) + (p + 1.0) / p


__all__ = [
    "ALPHA_PRIME_SUP",
    "alpha",
    "alpha_derivative",
    "gamma",
    "gamma_derivative",
    "gamma_hat",
    "inverse_alpha",
]
