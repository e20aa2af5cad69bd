"""Parameter objects shared by the constitutive functions."""

from __future__ import annotations

from dataclasses import dataclass

from chb_simulator.const import DEFAULT_PENALTY_POWER, DEFAULT_Q0
from chb_simulator.exceptions import ChbConfigurationError

# Lower end of the sensitivity range for which the three-dimensional theory applies.
P_THREE_D_MIN = 12.0 / 11.0


@dataclass(frozen=True)
class PotentialParams:
    """
    Parameters of the singular potential and its regularization.

    Attributes:
        lam: Concavity parameter lambda >= 0.
        n: Regularization index, or None for the exact logarithmic potential.
        q0: Growth exponent of the penalty, > 2.
        penalty_power: Exponent k in the penalty coefficient n**(k * q0).

    """

    lam: float = 0.0
    n: int | None = None
    q0: float = DEFAULT_Q0
    penalty_power: float = DEFAULT_PENALTY_POWER

    def __post_init__(self) -> None:
        """Validate ranges."""
        if self.lam < 0:
            msg = f"lambda must be nonnegative, got {self.lam}"
            raise ChbConfigurationError(msg)
        if self.q0 <= 2:
            msg = f"q0 must exceed 2, got {self.q0}"
            raise ChbConfigurationError(msg)
        if self.n is not None and (int(self.n) != self.n or self.n < 1):
            msg = f"Regularization index must be a positive integer, got {self.n}"
            raise ChbConfigurationError(msg)
        if self.penalty_power < 0:
            msg = f"penalty_power must be nonnegative, got {self.penalty_power}"
            raise ChbConfigurationError(msg)

    @property
    def is_exact(self) -> bool:
        """True for the unregularized logarithmic potential."""
        return self.n is None

    def dominates_conjugate(self, p: float) -> bool:
        """Whether q0 exceeds the conjugate exponent p' = p / (p - 1)."""
        return self.q0 > p / (p - 1.0)


@dataclass(frozen=True)
class SensitivityParams:
    """
    Chemotactic sensitivity parameters.

    Attributes:
        p: Exponent in (1, 2]; alpha grows like s**(2 - p).
        chi: Chemotactic coefficient.

    """

    p: float = 2.0
    chi: float = 0.0

    def __post_init__(self) -> None:
        """Validate ranges."""
        if not 1.0 < self.p <= 2.0:
            msg = f"p must lie in (1, 2], got {self.p}"
            raise ChbConfigurationError(msg)
        if self.chi < 0:
            msg = f"chi must be nonnegative, got {self.chi}"
            raise ChbConfigurationError(msg)

    @property
    def a(self) -> float:
        """Growth exponent a = 2 - p."""
        return 2.0 - self.p

    @property
    def conjugate(self) -> float:
        """Conjugate exponent p' = p / (p - 1)."""
        return self.p / (self.p - 1.0)

    @property
    def in_three_d_range(self) -> bool:
        """Whether p lies in (12/11, 2]."""
        return self.p > P_THREE_D_MIN
