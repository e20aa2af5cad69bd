"""Scalar mass balance m' + ell m = hbar(t) of the phase field mean."""

from __future__ import annotations

from collections.abc import Callable, Sequence
import math

import numpy as np
from numpy.typing import NDArray

from chb_simulator.exceptions import ChbConfigurationError


def mass_ode_step(m: float, dt: float, ell: float, hbar: float) -> float:
    """One step m -> (m + dt hbar) / (1 + dt ell) of the mean recursion."""
    return (m + dt * hbar) / (1.0 + dt * ell)


def mass_ode_reference(
    m0: float,
    ell: float,
    hbar: Sequence[float] | NDArray[np.float64] | Callable[[float], float],
    t_end: float,
    dt: float,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Integrate the mean ODE with the time discretization of ch_step.

    m_{k+1} = (m_k + dt hbar_k) / (1 + dt ell): implicit sink, explicit source.

    Args:
        m0: Initial mean, |m0| < 1.
        ell: Sink coefficient, > 0.
        hbar: Mean source per step, either sampled values (one per step) or
            a function of the old time level.
        t_end: Final time.
        dt: Time step.

    Returns:
        Times and means, both of length steps + 1.

    Raises:
        ChbConfigurationError: If |m0| >= 1, ell <= 0, dt <= 0 or too few samples.

    Example:
        >>> _, m = mass_ode_reference(0.2, 1.0, lambda t: 0.0, 1.0, 1e-3)
        >>> round(m[-1], 4)  # 0.2 exp(-1) = 0.0736 as dt -> 0
        0.0736

    """
    if not abs(m0) < 1.0:
        msg = f"Initial mean must lie in (-1, 1), got {m0}"
        raise ChbConfigurationError(msg)
    if ell <= 0 or dt <= 0:
        msg = f"ell and dt must be positive, got ell={ell}, dt={dt}"
        raise ChbConfigurationError(msg)

    steps = max(1, math.ceil(t_end / dt - 1e-9))
    times = np.arange(steps + 1) * dt
    if callable(hbar):
        samples = np.array([hbar(float(t)) for t in times[:-1]])
    else:
        samples = np.asarray(hbar, dtype=np.float64)
        if samples.size < steps:
            msg = f"hbar has {samples.size} samples, {steps} steps requested"
            raise ChbConfigurationError(msg)

    means = np.empty(steps + 1)
    means[0] = m0
    for k in range(steps):
        means[k + 1] = mass_ode_step(means[k], dt, ell, samples[k])
    return times, means


def mean_bound_delta(m0: float, ell: float, h_bound: float) -> float:
    """
    Distance of the admissible mean range from the pure phases.

    delta = 1 - max(|m0|, H / ell), so every mean of the run lies in
    [-1 + delta, 1 - delta].

    Raises:
        ChbConfigurationError: If H / ell >= 1 or |m0| >= 1.

    """
    if ell <= 0 or h_bound / ell >= 1.0:
        msg = f"Mean bound needs H/ell < 1, got H={h_bound}, ell={ell}"
        raise ChbConfigurationError(msg)
    if not abs(m0) < 1.0:
        msg = f"Mean bound needs |m0| < 1, got {m0}"
        raise ChbConfigurationError(msg)
    return 1.0 - max(abs(m0), h_bound / ell)


__all__ = ["mass_ode_reference", "mass_ode_step", "mean_bound_delta"]
