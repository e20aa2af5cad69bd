"""
Free energy of the coupled system and its envelopes.

    E = 1/2 ||grad phi||**2 [+ 1/(2n) ||L phi||**2] + int F(phi) + int (gamma_hat(sigma) - chi sigma phi)

Two envelopes accompany it. The coercivity envelope is a frozen lower bound
E >= kappa (||phi||_V**2 + int |F(phi)|) + kappa_p int sigma**p - c_p whose
constant is fitted once by scanning the pointwise integrand. The growth
envelope is a Gronwall-type bound (E0 - offset) exp(c2 t) fitted on a
calibration run and checked on others.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from chb_simulator.const import FLOOR_EPS
from chb_simulator.constitutive import gamma_hat, potential_F
from chb_simulator.data import ModelParams
from chb_simulator.exceptions import ChbConfigurationError
from chb_simulator.grid import (
    ScalarField,
    check_same_grid,
    face_norm_sq,
    gradient,
    integral,
    laplacian_neumann,
    norm_sq,
)

_SCAN_MARGIN = 1e-3


def total_energy(phi: ScalarField, sigma: ScalarField, mp: ModelParams) -> float:
    """
    Discrete free energy.

    Args:
        phi: Phase field; |phi| < 1 in exact mode.
        sigma: Nonnegative nutrient; gamma_hat(0) is its limit (p + 1) / p.
        mp: Model constants.

    Returns:
        The energy as a grid quadrature.

    Raises:
        ChbDomainError: If phi leaves (-1, 1) in exact mode.

    """
    check_same_grid(phi.grid, sigma.grid)
    grid = phi.grid
    energy = 0.5 * face_norm_sq(gradient(phi))
    if mp.n is not None:
        energy += 0.5 / mp.n * norm_sq(laplacian_neumann(phi))
    bulk = potential_F(phi.values, mp.potential)
    bulk = bulk + gamma_hat(sigma.values, mp.sensitivity, allow_zero=True) - mp.chi * sigma.values * phi.values
    return energy + integral(ScalarField(grid, bulk))


@dataclass(frozen=True)
class EnergyEnvelope:
    """Frozen coercivity envelope E >= kappa (||phi||_V**2 + int |F|) + kappa_p int sigma**p - c_p."""

    kappa: float
    kappa_p: float
    c_p: float

    def lower_bound(self, phi: ScalarField, sigma: ScalarField, mp: ModelParams) -> float:
        """Right-hand side of the envelope for one state."""
        v_norm_sq = norm_sq(phi) + face_norm_sq(gradient(phi))
        abs_f = integral(ScalarField(phi.grid, np.abs(potential_F(phi.values, mp.potential))))
        sigma_p = integral(ScalarField(sigma.grid, sigma.values**mp.p))
        return self.kappa * (v_norm_sq + abs_f) + self.kappa_p * sigma_p - self.c_p

    def holds(self, phi: ScalarField, sigma: ScalarField, mp: ModelParams) -> bool:
        """Whether total_energy is above the envelope."""
        return total_energy(phi, sigma, mp) >= self.lower_bound(phi, sigma, mp)


def _phase_samples(mp: ModelParams, phi_max: float, samples: int) -> NDArray[np.float64]:
    if mp.n is None:
        edge = 1.0 - 1e-12
        # Dense near the pure phases where F is steepest.
        return np.tanh(np.linspace(-np.arctanh(edge), np.arctanh(edge), samples))
    return np.linspace(-phi_max, phi_max, samples)


def fit_energy_envelope(
    mp: ModelParams,
    area: float,
    *,
    kappa: float = 0.25,
    kappa_p: float | None = None,
    phi_max: float = 3.0,
    sigma_max: float = 50.0,
    samples: int = 801,
) -> EnergyEnvelope:
    """
    Fit c_p so that the coercivity envelope holds for states inside the scanned box.

    With kappa <= 1/2 the gradient term dominates kappa ||grad phi||**2, so
    E minus the envelope is at least area times the minimum over (r, s) of

        F(r) - kappa |F(r)| - kappa r**2 + gamma_hat(s) - chi s r - kappa_p s**p,

    which is scanned on a tensor grid. In exact mode r covers (-1, 1); in
    regularized mode |r| <= phi_max. Sigma covers [0, sigma_max].

    Args:
        mp: Model constants.
        area: Domain area.
        kappa: Weight of the phase terms, in (0, 1/2].
        kappa_p: Weight of int sigma**p; defaults to 1 / (2 p (p - 1)), half
            the leading coefficient of gamma_hat.
        phi_max: Phase range scanned in regularized mode.
        sigma_max: Nutrient range scanned.
        samples: Points per axis.

    Returns:
        The frozen envelope.

    Raises:
        ChbConfigurationError: If kappa or kappa_p is out of range.

    """
    p = mp.p
    leading = 1.0 / (p * (p - 1.0))
    kappa_p = 0.5 * leading if kappa_p is None else kappa_p
    if not 0 < kappa <= 0.5 or not 0 <= kappa_p < leading:
        msg = f"Envelope weights out of range: kappa={kappa}, kappa_p={kappa_p}"
        raise ChbConfigurationError(msg)

    r = _phase_samples(mp, phi_max, samples)
    s = np.concatenate([[0.0], np.geomspace(1e-8, sigma_max, samples - 1)])
    f_r = potential_F(r, mp.potential)
    phase = f_r - kappa * np.abs(f_r) - kappa * r * r
    nutrient = gamma_hat(s, mp.sensitivity, allow_zero=True) - kappa_p * s**p
    integrand = phase[:, None] + nutrient[None, :] - mp.chi * r[:, None] * s[None, :]
    minimum = float(np.min(integrand))
    c_p = -area * (minimum - _SCAN_MARGIN * (1.0 + abs(minimum)))
    return EnergyEnvelope(kappa=kappa, kappa_p=kappa_p, c_p=max(c_p, 0.0))


@dataclass(frozen=True)
class GrowthEnvelope:
    """E(t) <= offset + (E0 - offset) exp(c2 t), with c2 >= 0 fitted on a calibration run."""

    offset: float
    c2: float

    def bound(self, t: ArrayLike, e0: float) -> NDArray[np.float64]:
        """Envelope values at times t for initial energy e0."""
        return self.offset + (e0 - self.offset) * np.exp(self.c2 * np.asarray(t, dtype=np.float64))


def fit_growth_envelope(times: Sequence[float], energies: Sequence[float], margin: float = 0.1) -> GrowthEnvelope:
    """
    Fit the growth rate of E - offset over a calibration run.

    The offset sits one unit below the smallest energy, which keeps the
    shifted energy positive. c2 is the largest logarithmic growth rate over
    the run, enlarged by the relative margin.

    Raises:
        ChbConfigurationError: For fewer than two samples or nonincreasing times.

    """
    t = np.asarray(times, dtype=np.float64)
    e = np.asarray(energies, dtype=np.float64)
    if t.size < 2 or t.size != e.size or np.any(np.diff(t) <= 0):
        msg = "Growth envelope needs at least two samples at increasing times"
        raise ChbConfigurationError(msg)
    offset = float(np.min(e)) - 1.0
    shifted = np.log(e - offset + FLOOR_EPS)
    rates = np.diff(shifted) / np.diff(t)
    c2 = max(0.0, float(np.max(rates))) * (1.0 + margin)
    return GrowthEnvelope(offset=offset, c2=c2)


__all__ = ["EnergyEnvelope", "GrowthEnvelope", "fit_energy_envelope", "fit_growth_envelope", "total_energy"]
