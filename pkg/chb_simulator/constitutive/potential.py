"""
Logarithmic double-well potential.

F(r) = (1 + r) log(1 + r) + (1 - r) log(1 - r) - lambda / 2 r**2 on (-1, 1),
with monotone part beta(r) = log(1 + r) - log(1 - r). In regularized mode the
same entry points evaluate F_n and beta_n instead.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from chb_simulator.exceptions import ChbDomainError

from .params import PotentialParams
from .regularization import beta_n, beta_n_derivative, regularized_potential


def _check_open_interval(r: NDArray[np.float64], what: str) -> None:
    outside = ~(np.abs(r) < 1.0)
    if np.any(outside):
        value = float(r[outside].flat[0])
        msg = f"{what} needs |r| < 1 in exact mode, got r={value}"
        raise ChbDomainError(msg, value)


def log_entropy(r: ArrayLike) -> NDArray[np.float64]:
    """Convex part B(r) = (1 + r) log(1 + r) + (1 - r) log(1 - r); finite on [-1, 1]."""
    r_arr = np.asarray(r, dtype=np.float64)
    return special.xlogy(1.0 + r_arr, 1.0 + r_arr) + special.xlogy(1.0 - r_arr, 1.0 - r_arr)


def beta(r: ArrayLike) -> NDArray[np.float64]:
    """
    Monotone part beta(r) = log(1 + r) - log(1 - r).

    Raises:
        ChbDomainError: If some |r| >= 1.

    """
    r_arr = np.asarray(r, dtype=np.float64)
    _check_open_interval(r_arr, "beta")
    return 2.0 * np.arctanh(r_arr)


def beta_derivative(r: ArrayLike) -> NDArray[np.float64]:
    """beta'(r) = 2 / (1 - r**2)."""
    r_arr = np.asarray(r, dtype=np.float64)
    _check_open_interval(r_arr, "beta'")
    return 2.0 / (1.0 - r_arr * r_arr)


def monotone_part(r: ArrayLike, prm: PotentialParams) -> NDArray[np.float64]:
    """beta in exact mode, beta_n in regularized mode."""
    return beta(r) if prm.is_exact else beta_n(r, prm)


def monotone_part_derivative(r: ArrayLike, prm: PotentialParams) -> NDArray[np.float64]:
    """Derivative of monotone_part."""
    return beta_derivative(r) if prm.is_exact else beta_n_derivative(r, prm)


def potential_F(r: ArrayLike, prm: PotentialParams) -> NDArray[np.float64]:
    """
    Potential F (exact) or F_n (regularized), normalized so F(0) = 0.

    Args:
        r: Argument(s).
        prm: Potential parameters; prm.n selects the mode.

    Returns:
        Potential values with the shape of r.

    Raises:
        ChbDomainError: In exact mode if some |r| >= 1.

    Example:
        >>> float(potential_F(0.5, PotentialParams()))  # 1.5 ln 1.5 + 0.5 ln 0.5
        0.2616...

    """
    r_arr = np.asarray(r, dtype=np.float64)
    if not prm.is_exact:
        return regularized_potential(r_arr, prm)
    _check_open_interval(r_arr, "F")
    return log_entropy(r_arr) - 0.5 * prm.lam * r_arr * r_arr


def potential_f(r: ArrayLike, prm: PotentialParams) -> NDArray[np.float64]:
    """f = F' = beta - lambda r (or beta_n - lambda r)."""
    r_arr = np.asarray(r, dtype=np.float64)
    return monotone_part(r_arr, prm) - prm.lam * r_arr


__all__ = [
    "beta",
    "beta_derivative",
    "log_entropy",
    "monotone_part",
    "monotone_part_derivative",
    "potential_F",
    "potential_f",
]
