"""
Source pair (h, b) and the checks of its assumption class.

The assumption class requires

- |h(sigma, phi)| <= H with H / ell < 1,
- |d_phi h| <= C_h1 and (1 + sigma) |d_sigma h| <= C_h2,
- -b0 sigma <= b(sigma, phi) <= b_inf (1 + sigma).

Built-in families are constructed inside the class; validate_sources checks
any SourceSpec, including user-built ones, on a Sobol sample.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import partial
import math
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.stats import qmc

from chb_simulator.const import (
    CONF_B0,
    CONF_B_INF,
    CONF_CAPACITY,
    CONF_H_BOUND,
    DEFAULT_SIGMA_MAX,
    DEFAULT_VALIDATION_SAMPLES,
    LOGGER,
    PHI_SAMPLE_RANGE,
)
from chb_simulator.exceptions import ChbConfigurationError

SourceFunction = Callable[[NDArray[np.float64], NDArray[np.float64]], NDArray[np.float64]]

SOURCE_ZERO = "zero"
SOURCE_LOGISTIC_H = "logistic_h_saturating"
SOURCE_LINEAR_B = "linear_b"
SOURCE_LOGISTIC_B = "logistic_b"
BUILTIN_SOURCES = (SOURCE_ZERO, SOURCE_LOGISTIC_H, SOURCE_LINEAR_B, SOURCE_LOGISTIC_B)

_FD_STEP = 1e-6
_BOUND_SLACK = 1e-9
_DERIVATIVE_SLACK = 1e-6


def _zero(sigma: NDArray[np.float64], phi: NDArray[np.float64]) -> NDArray[np.float64]:
    return np.zeros(np.broadcast(sigma, phi).shape)


def _saturating_h(bound: float, sigma: NDArray[np.float64], phi: NDArray[np.float64]) -> NDArray[np.float64]:
    return bound * np.tanh(sigma / (1.0 + sigma)) * np.tanh(phi)


def _linear_b(b0: float, b_inf: float, sigma: NDArray[np.float64], phi: NDArray[np.float64]) -> NDArray[np.float64]:
    return b_inf - b0 * sigma + 0.0 * phi


def _logistic_b(
    b0: float, b_inf: float, capacity: float, sigma: NDArray[np.float64], phi: NDArray[np.float64]
) -> NDArray[np.float64]:
    growth = b_inf * sigma * (1.0 - sigma / capacity)
    uptake = b0 * sigma * 0.5 * (1.0 + np.tanh(phi))
    return np.maximum(growth - uptake, -b0 * sigma)


@dataclass(frozen=True)
class SourceSpec:
    """
    Source pair with its certified constants.

    Attributes:
        name: Family label used in reports.
        h: Phase source h(sigma, phi), vectorized.
        b: Nutrient source b(sigma, phi), vectorized.
        ell: Linear sink coefficient ell > 0 of the phase equation.
        h_bound: H, a bound on |h|.
        c_h1: Bound on |d_phi h|.
        c_h2: Bound on (1 + sigma) |d_sigma h|.
        b0: Decay constant, b >= -b0 sigma.
        b_inf: Growth constant, b <= b_inf (1 + sigma).

    """

    name: str
    h: SourceFunction
    b: SourceFunction
    ell: float
    h_bound: float = 0.0
    c_h1: float = 0.0
    c_h2: float = 0.0
    b0: float = 0.0
    b_inf: float = 0.0

    def __post_init__(self) -> None:
        """Check the scalar constants."""
        if self.ell <= 0:
            msg = f"ell must be positive, got {self.ell}"
            raise ChbConfigurationError(msg)
        for label in ("h_bound", "c_h1", "c_h2", "b0", "b_inf"):
            if getattr(self, label) < 0:
                msg = f"Source constant {label} must be nonnegative, got {getattr(self, label)}"
                raise ChbConfigurationError(msg)

    @property
    def margin(self) -> float:
        """H / ell, which must stay below one."""
        return self.h_bound / self.ell


def builtin_sources(name: str, constants: Mapping[str, float], ell: float) -> SourceSpec:
    """
    Build a source pair from a named family.

    Families:
        zero: h = 0, b = 0.
        logistic_h_saturating: h = H tanh(sigma / (1 + sigma)) tanh(phi), b = 0.
        linear_b: b = b_inf - b0 sigma.
        logistic_b: b = max(b_inf sigma (1 - sigma / K) - b0 sigma (1 + tanh phi) / 2, -b0 sigma).

    The two b-families accept an optional H that adds the saturating h.

    Args:
        name: Family name.
        constants: H, b0, b_inf and capacity as required by the family.
        ell: Linear sink coefficient.

    Returns:
        A SourceSpec inside the assumption class.

    Raises:
        ChbConfigurationError: For unknown families, missing constants or H / ell >= 1.

    """
    if name not in BUILTIN_SOURCES:
        msg = f"Unknown source family {name!r}; choose one of {', '.join(BUILTIN_SOURCES)}"
        raise ChbConfigurationError(msg)

    def required(key: str) -> float:
        if key not in constants:
            msg = f"Source family {name!r} requires constant {key!r}"
            raise ChbConfigurationError(msg)
        return float(constants[key])

    h_bound = 0.0 if name == SOURCE_ZERO else float(constants.get(CONF_H_BOUND, 0.0))
    if name == SOURCE_LOGISTIC_H:
        h_bound = required(CONF_H_BOUND)
    if h_bound / ell >= 1.0:
        msg = f"Source bound violates H/ell < 1: H={h_bound}, ell={ell}, H/ell={h_bound / ell:.4g}"
        raise ChbConfigurationError(msg)
    h: SourceFunction = partial(_saturating_h, h_bound) if h_bound > 0 else _zero

    b: SourceFunction = _zero
    b0 = b_inf = 0.0
    if name == SOURCE_LINEAR_B:
        b0, b_inf = required(CONF_B0), required(CONF_B_INF)
        b = partial(_linear_b, b0, b_inf)
    elif name == SOURCE_LOGISTIC_B:
        b0, b_inf, capacity = required(CONF_B0), required(CONF_B_INF), required(CONF_CAPACITY)
        if capacity <= 0:
            msg = f"logistic_b capacity must be positive, got {capacity}"
            raise ChbConfigurationError(msg)
        b = partial(_logistic_b, b0, b_inf, capacity)

    return SourceSpec(name=name, h=h, b=b, ell=ell, h_bound=h_bound, c_h1=h_bound, c_h2=h_bound, b0=b0, b_inf=b_inf)


@dataclass(frozen=True)
class SourceCheck:
    """One sampled bound: observed value against its bound."""

    name: str
    observed: float
    bound: float
    passed: bool


@dataclass
class SourceReport:
    """Result of validate_sources."""

    source: str
    samples: int
    sigma_max: float
    checks: list[SourceCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """PASS iff every sampled bound holds."""
        return all(check.passed for check in self.checks)

    def failures(self) -> list[SourceCheck]:
        """Checks that did not hold."""
        return [check for check in self.checks if not check.passed]

    def as_dict(self) -> dict[str, Any]:
        """Serializable form for the run summary."""
        return {
            "source": self.source,
            "samples": self.samples,
            "sigma_max": self.sigma_max,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "observed": c.observed, "bound": c.bound, "passed": c.passed} for c in self.checks
            ],
        }


def validate_sources(
    spec: SourceSpec,
    samples: int = DEFAULT_VALIDATION_SAMPLES,
    sigma_max: float = DEFAULT_SIGMA_MAX,
    seed: int = 0,
) -> SourceReport:
    """
    Check a source pair against its declared constants on a Sobol sample.

    The sample covers sigma in [0, sigma_max] and phi in [-2, 2]; it is
    rounded up to a power of two. Derivatives are central differences.

    Args:
        spec: Source pair to check.
        samples: Minimum number of sample points.
        sigma_max: Upper end of the sigma range.
        seed: Scrambling seed.

    Returns:
        A report listing every bound; report-only, never raises.

    """
    m = max(1, math.ceil(math.log2(max(samples, 2))))
    sampler = qmc.Sobol(d=2, scramble=True, rng=np.random.default_rng(seed))
    unit = sampler.random_base2(m)
    points = qmc.scale(unit, [_FD_STEP, -PHI_SAMPLE_RANGE], [sigma_max, PHI_SAMPLE_RANGE])
    sigma, phi = points[:, 0], points[:, 1]

    h = spec.h(sigma, phi)
    b = spec.b(sigma, phi)
    dh_dphi = (spec.h(sigma, phi + _FD_STEP) - spec.h(sigma, phi - _FD_STEP)) / (2.0 * _FD_STEP)
    dh_dsigma = (spec.h(sigma + _FD_STEP, phi) - spec.h(sigma - _FD_STEP, phi)) / (2.0 * _FD_STEP)

    def upper(name: str, observed: float, bound: float, slack: float) -> SourceCheck:
        return SourceCheck(name, observed, bound, observed <= bound * (1.0 + slack) + slack)

    margin = spec.margin
    checks = [
        SourceCheck("H_over_ell", margin, 1.0, margin < 1.0),
        upper("h_bound", float(np.max(np.abs(h))), spec.h_bound, _BOUND_SLACK),
        upper("h_phi_lipschitz", float(np.max(np.abs(dh_dphi))), spec.c_h1, _DERIVATIVE_SLACK),
        upper("h_sigma_decay", float(np.max((1.0 + sigma) * np.abs(dh_dsigma))), spec.c_h2, _DERIVATIVE_SLACK),
        upper("b_lower_band", float(np.max(-spec.b0 * sigma - b)), 0.0, _BOUND_SLACK),
        upper("b_upper_band", float(np.max(b - spec.b_inf * (1.0 + sigma))), 0.0, _BOUND_SLACK),
    ]
    report = SourceReport(source=spec.name, samples=len(sigma), sigma_max=sigma_max, checks=checks)
    if report.passed:
        LOGGER.debug("Source %s passed %d sampled checks", spec.name, len(checks))
    else:
        LOGGER.warning(
            "Source %s failed: %s", spec.name, ", ".join(check.name for check in report.failures())
        )
    return report


__all__ = [
    "BUILTIN_SOURCES",
    "SourceCheck",
    "SourceFunction",
    "SourceReport",
    "SourceSpec",
    "builtin_sources",
    "validate_sources",
]
