"""
Regularized monotone graph beta_n = Yosida(beta) + j_n.

The Yosida approximation of beta = log(1 + r) - log(1 - r) with index 1/n is
evaluated through the variable w = beta(r), r = tanh(w / 2). The resolvent
equation r + beta(r) / n = s then reads

    tanh(w / 2) + w / n = s,

which is strictly increasing with slope at least 1/n, bracketed by
[n (s - 1), n (s + 1)], and representable for every finite s. Its root w is
the Yosida value n (s - r).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import integrate, special

from chb_simulator.const import LOGGER, RESOLVENT_MAX_ITER, RESOLVENT_TOL
from chb_simulator.exceptions import ChbConfigurationError, ChbNumericError

from .params import PotentialParams

LOG_FLOAT_MAX = float(np.log(np.finfo(np.float64).max))
LN2 = float(np.log(2.0))


def _as_float_array(values: ArrayLike) -> NDArray[np.float64]:
    return np.asarray(values, dtype=np.float64)


def _require_regularized(prm: PotentialParams) -> int:
    if prm.n is None:
        msg = "Regularized graph requested with the exact potential"
        raise ChbConfigurationError(msg)
    return int(prm.n)


def yosida_beta(s: ArrayLike, n: int) -> NDArray[np.float64]:
    """
    Yosida approximation of beta with index 1/n.

    Safeguarded Newton iteration on tanh(w / 2) + w / n = s, falling back to
    bisection whenever a Newton step leaves the current bracket.

    Args:
        s: Argument(s).
        n: Regularization index, >= 1.

    Returns:
        The values n (s - r) with r the resolvent, same shape as s.

    Raises:
        ChbConfigurationError: If n < 1.
        ChbNumericError: If the iteration cap is reached, which signals a bug.

    """
    if n < 1:
        msg = f"Yosida index needs n >= 1, got {n}"
        raise ChbConfigurationError(msg)
    s_arr = _as_float_array(s)
    target = np.atleast_1d(s_arr).ravel()
    lo = n * (target - 1.0)
    hi = n * (target + 1.0)
    w = np.clip(np.zeros_like(target), lo, hi)
    tol = RESOLVENT_TOL * np.maximum(1.0, np.abs(target))

    for _ in range(RESOLVENT_MAX_ITER):
        residual = np.tanh(0.5 * w) + w / n - target
        done = np.abs(residual) <= tol
        if np.all(done):
            return w.reshape(s_arr.shape)
        positive = residual > 0
        hi = np.where(positive, w, hi)
        lo = np.where(positive, lo, w)
        slope = 2.0 * special.expit(w) * special.expit(-w) + 1.0 / n
        newton = w - residual / slope
        inside = (newton > lo) & (newton < hi)
        w = np.where(done, w, np.where(inside, newton, 0.5 * (lo + hi)))

    worst = float(np.max(np.abs(np.tanh(0.5 * w) + w / n - target)))
    msg = f"Yosida resolvent did not converge for n={n}: residual {worst:.3e}"
    raise ChbNumericError(msg)


def yosida_resolvent(s: ArrayLike, n: int) -> NDArray[np.float64]:
    """Resolvent r = (I + beta / n)^-1 (s), always inside (-1, 1)."""
    return np.tanh(0.5 * yosida_beta(s, n))


def yosida_beta_derivative(s: ArrayLike, n: int) -> NDArray[np.float64]:
    """Derivative of the Yosida approximation, in (0, n]."""
    w = yosida_beta(s, n)
    return 1.0 / (2.0 * special.expit(w) * special.expit(-w) + 1.0 / n)


def yosida_primitive(s: ArrayLike, n: int) -> NDArray[np.float64]:
    """
    Primitive of the Yosida approximation vanishing at zero.

    This is the Moreau envelope min_r [n/2 (s - r)**2 + B(r)] of the convex
    part B(r) = (1 + r) log(1 + r) + (1 - r) log(1 - r), evaluated at the
    resolvent. With 1 +- r = 2 expit(+-w) every log stays finite.
    """
    s_arr = _as_float_array(s)
    w = yosida_beta(s_arr, n)
    gap = s_arr - np.tanh(0.5 * w)
    entropy = special.expit(w) * special.log_expit(w) + special.expit(-w) * special.log_expit(-w)
    return 0.5 * n * gap * gap + 2.0 * LN2 + 2.0 * entropy


def yosida_primitive_by_quadrature(s: float, n: int, tol: float = 1e-10) -> float:
    """
    Adaptive Gauss-Kronrod primitive of the Yosida approximation.

    Independent oracle for yosida_primitive.

    Raises:
        ChbNumericError: If quad reports a problem or an error estimate above tol.

    """
    result = integrate.quad(lambda t: float(yosida_beta(t, n)), 0.0, float(s), epsabs=tol, limit=200, full_output=1)
    value, abserr = result[0], result[1]
    if len(result) > 3 or abserr > tol:
        msg = f"Quadrature of the Yosida primitive failed at s={s}, n={n}: error estimate {abserr:.3e}"
        raise ChbNumericError(msg)
    return float(value)


def _penalty_log_magnitude(excess: NDArray[np.float64], n: int, q0: float, power: float, shift: float) -> NDArray:
    """log of n**(power q0) * excess**(q0 - shift) on excess > 0."""
    return power * q0 * np.log(n) + (q0 - shift) * np.log(excess)


def _penalty_eval(
    s: ArrayLike, n: int, q0: float, penalty_power: float, shift: float, coefficient: float, *, odd: bool
) -> NDArray[np.float64]:
    s_arr = _as_float_array(s)
    excess = np.abs(s_arr) - 1.0
    active = excess > 0
    result = np.zeros_like(s_arr)
    if not np.any(active):
        return result
    log_mag = np.log(coefficient) + _penalty_log_magnitude(excess[active], n, q0, penalty_power, shift)
    if np.max(log_mag) > LOG_FLOAT_MAX:
        worst = float(np.max(np.abs(s_arr[active])))
        msg = (
            f"Penalty overflow: n={n}, q0={q0}, penalty_power={penalty_power} at |s|={worst}; "
            "lower penalty_power or the regularization index"
        )
        raise ChbNumericError(msg)
    magnitude = np.exp(log_mag)
    result[active] = np.sign(s_arr[active]) * magnitude if odd else magnitude
    return result


def penalty_j(s: ArrayLike, n: int, q0: float, penalty_power: float) -> NDArray[np.float64]:
    """
    Penalty j_n: zero on [-1, 1], q0 n**(k q0) (s - 1)**(q0 - 1) beyond 1, odd.

    Raises:
        ChbNumericError: If the value would overflow a float64.

    """
    return _penalty_eval(s, n, q0, penalty_power, 1.0, q0, odd=True)


def penalty_j_derivative(s: ArrayLike, n: int, q0: float, penalty_power: float) -> NDArray[np.float64]:
    """Derivative of penalty_j, even and nonnegative."""
    return _penalty_eval(s, n, q0, penalty_power, 2.0, q0 * (q0 - 1.0), odd=False)


def penalty_primitive(s: ArrayLike, n: int, q0: float, penalty_power: float) -> NDArray[np.float64]:
    """Primitive of penalty_j: n**(k q0) (|s| - 1)**q0 outside [-1, 1], zero inside."""
    return _penalty_eval(s, n, q0, penalty_power, 0.0, 1.0, odd=False)


def beta_n(s: ArrayLike, prm: PotentialParams) -> NDArray[np.float64]:
    """Regularized graph beta_n = Yosida(beta) + j_n; monotone, beta_n(0) = 0."""
    n = _require_regularized(prm)
    return yosida_beta(s, n) + penalty_j(s, n, prm.q0, prm.penalty_power)


def beta_n_derivative(s: ArrayLike, prm: PotentialParams) -> NDArray[np.float64]:
    """Derivative of beta_n, used by the Newton Jacobian."""
    n = _require_regularized(prm)
    return yosida_beta_derivative(s, n) + penalty_j_derivative(s, n, prm.q0, prm.penalty_power)


def beta_n_primitive(s: ArrayLike, prm: PotentialParams) -> NDArray[np.float64]:
    """Convex primitive of beta_n vanishing at zero (no concave term)."""
    n = _require_regularized(prm)
    return yosida_primitive(s, n) + penalty_primitive(s, n, prm.q0, prm.penalty_power)


def regularized_potential(s: ArrayLike, prm: PotentialParams) -> NDArray[np.float64]:
    """F_n(s) = primitive of beta_n minus lambda / 2 s**2."""
    s_arr = _as_float_array(s)
    return beta_n_primitive(s_arr, prm) - 0.5 * prm.lam * s_arr * s_arr


@dataclass(frozen=True)
class EnvelopeFit:
    """
    Growth envelope of the regularized primitive.

    kappa |s|**q0 - c <= primitive_n(s) <= upper (1 + |s|**q0) on the sampled range.
    """

    kappa: float
    c: float
    upper: float
    q0: float

    def lower_bound(self, s: ArrayLike) -> NDArray[np.float64]:
        """Evaluate kappa |s|**q0 - c."""
        return self.kappa * np.abs(_as_float_array(s)) ** self.q0 - self.c

    def upper_bound(self, s: ArrayLike) -> NDArray[np.float64]:
        """Evaluate upper (1 + |s|**q0)."""
        return self.upper * (1.0 + np.abs(_as_float_array(s)) ** self.q0)


def coercivity_envelope(prm: PotentialParams, s_max: float = 5.0, samples: int = 2001) -> EnvelopeFit:
    """
    Fit the q0-growth envelope of the regularized primitive.

    kappa and c are fitted at n = 1 and hold for every larger n, because both
    the Moreau envelope and the penalty increase with n. The upper constant
    is computed for the n in prm.

    Args:
        prm: Regularized potential parameters.
        s_max: Half width of the sampled range [-s_max, s_max], > 1.
        samples: Number of equispaced samples.

    Returns:
        The fitted envelope.

    """
    _require_regularized(prm)
    s = np.linspace(-s_max, s_max, samples)
    base = PotentialParams(lam=prm.lam, n=1, q0=prm.q0, penalty_power=prm.penalty_power)
    primitive_1 = beta_n_primitive(s, base)
    growth = np.abs(s) ** prm.q0

    far = np.abs(s) >= min(2.0, s_max)
    kappa = 0.5 * float(np.min(primitive_1[far] / growth[far]))
    c = max(0.0, float(np.max(kappa * growth - primitive_1)))
    upper = float(np.max(beta_n_primitive(s, prm) / (1.0 + growth)))
    LOGGER.debug("Coercivity envelope for n=%s: kappa=%.4g c=%.4g upper=%.4g", prm.n, kappa, c, upper)
    return EnvelopeFit(kappa=kappa, c=c, upper=upper, q0=prm.q0)


def truncation(s: ArrayLike) -> NDArray[np.float64]:
    """
    C2 odd truncation T with T = 0 on [-1, 1] and T(s) = s - 2 for s >= 3.

    On [1, 3] the derivative is the smoothstep 3t**2 - 2t**3, t = (s - 1) / 2,
    so 0 <= T' <= 1 everywhere.
    """
    s_arr = _as_float_array(s)
    a = np.abs(s_arr)
    t = np.clip((a - 1.0) / 2.0, 0.0, 1.0)
    ramp = 2.0 * (t**3 - 0.5 * t**4)
    magnitude = np.where(a >= 3.0, a - 2.0, ramp)
    return np.sign(s_arr) * magnitude


__all__ = [
    "EnvelopeFit",
    "beta_n",
    "beta_n_derivative",
    "beta_n_primitive",
    "coercivity_envelope",
    "penalty_j",
    "penalty_j_derivative",
    "penalty_primitive",
    "regularized_potential",
    "truncation",
    "yosida_beta",
    "yosida_beta_derivative",
    "yosida_primitive",
    "yosida_primitive_by_quadrature",
    "yosida_resolvent",
]
