"""Custom types for chb_simulator."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import StrEnum
import math
from pathlib import Path
from typing import TYPE_CHECKING, Any

from .const import (
    DEFAULT_CSV_EVERY,
    DEFAULT_LINEAR_TOL,
    DEFAULT_NEWTON_MAX_ITER,
    DEFAULT_NEWTON_TOL,
    DEFAULT_NUTRIENT_CFL,
    DEFAULT_PENALTY_POWER,
    DEFAULT_Q0,
    DEFAULT_Q_MONITOR,
    DEFAULT_SIGMA_FLOOR,
    DEFAULT_SNAPSHOT_EVERY,
)
from .constitutive import PotentialParams, SensitivityParams, SourceSpec
from .exceptions import ChbConfigurationError
from .flow import FlowSolveParams
from .grid import FaceField, GridSpec, ScalarField

if TYPE_CHECKING:
    from collections.abc import Callable

    from .diagnostics import DiagnosticsRecord


class Regularization(StrEnum):
    """Treatment of the singular potential."""

    EXACT_LOG = "exact_log"
    BETA_N = "beta_n"


class MobilityFaceRule(StrEnum):
    """Face value of alpha(sigma) in the chemotactic flux."""

    UPWIND = "upwind_by_driving_force"
    HARMONIC = "harmonic_mean"


class AdvectionScheme(StrEnum):
    """Face value of the advected scalar."""

    UPWIND = "upwind"
    CENTRAL = "central"


@dataclass(frozen=True)
class ModelParams:
    """
    Physical constants of the coupled system.

    Attributes:
        chi: Chemotactic coefficient.
        ell: Linear sink of the phase equation, > 0.
        lam: Concavity of the potential, >= 0.
        p: Sensitivity exponent in (1, 2].
        epsilon: Brinkman viscosity; 0 selects Darcy flow.
        n: Regularization index, or None for the exact logarithm.
        q0: Penalty growth exponent, > 2.
        penalty_power: Exponent k in n**(k q0).
        q_monitor: Exponent q of the monitored sigma**q entropies.

    """

    chi: float
    ell: float
    lam: float
    p: float
    epsilon: float
    n: int | None = None
    q0: float = DEFAULT_Q0
    penalty_power: float = DEFAULT_PENALTY_POWER
    q_monitor: float = DEFAULT_Q_MONITOR

    def __post_init__(self) -> None:
        """Validate by building the derived parameter objects."""
        if self.ell <= 0:
            msg = f"ell must be positive, got {self.ell}"
            raise ChbConfigurationError(msg)
        if self.epsilon < 0:
            msg = f"epsilon must be nonnegative, got {self.epsilon}"
            raise ChbConfigurationError(msg)
        if self.q_monitor <= 0:
            msg = f"q_monitor must be positive, got {self.q_monitor}"
            raise ChbConfigurationError(msg)
        _ = self.potential
        _ = self.sensitivity

    @property
    def potential(self) -> PotentialParams:
        """Parameters of the (regularized) potential."""
        return PotentialParams(lam=self.lam, n=self.n, q0=self.q0, penalty_power=self.penalty_power)

    @property
    def sensitivity(self) -> SensitivityParams:
        """Parameters of alpha, gamma and gamma_hat."""
        return SensitivityParams(p=self.p, chi=self.chi)

    @property
    def regularization(self) -> Regularization:
        """Regularization mode implied by n."""
        return Regularization.EXACT_LOG if self.n is None else Regularization.BETA_N

    @property
    def a(self) -> float:
        """Growth exponent a = 2 - p of alpha."""
        return 2.0 - self.p

    def with_changes(self, **changes: float | int | None) -> ModelParams:
        """Copy with some constants replaced, as used by the sweeps."""
        return replace(self, **changes)


@dataclass(frozen=True)
class SimulationState:
    """Fields of the coupled system at one time level."""

    t: float
    phi: ScalarField
    mu: ScalarField
    sigma: ScalarField
    u: FaceField
    pi: ScalarField
    step: int = 0

    @property
    def grid(self) -> GridSpec:
        """Grid shared by every field."""
        return self.phi.grid


@dataclass(frozen=True)
class NumericsSettings:
    """Solver knobs shared by every step of a run."""

    newton_tol: float = DEFAULT_NEWTON_TOL
    newton_max_iter: int = DEFAULT_NEWTON_MAX_ITER
    linear_tol: float = DEFAULT_LINEAR_TOL
    mobility_face_rule: MobilityFaceRule = MobilityFaceRule.UPWIND
    advection: AdvectionScheme = AdvectionScheme.UPWIND
    sigma_floor: float = DEFAULT_SIGMA_FLOOR
    nutrient_cfl: float = DEFAULT_NUTRIENT_CFL


@dataclass(frozen=True)
class OutputSettings:
    """
    Where and how often a run writes files.

    Attributes:
        directory: Run directory, or None for an in-memory run.
        snapshot_every: Field snapshot cadence in steps; 0 writes only the
            initial and final fields.
        csv_every: Diagnostics CSV cadence in steps; the final step is
            always written.
        binary_fields: Write snapshots as little-endian float64.

    """

    directory: Path | None = None
    snapshot_every: int = DEFAULT_SNAPSHOT_EVERY
    csv_every: int = DEFAULT_CSV_EVERY
    binary_fields: bool = False

    def __post_init__(self) -> None:
        """Validate the cadences."""
        if self.snapshot_every < 0 or self.csv_every < 1:
            msg = f"Need snapshot_every >= 0 and csv_every >= 1, got {self.snapshot_every}, {self.csv_every}"
            raise ChbConfigurationError(msg)


@dataclass(frozen=True)
class ManufacturedForcing:
    """
    Extra right-hand sides of a manufactured-solution run, as functions of time.

    Attributes:
        phase: Added to the phi equation.
        nutrient: Added to the sigma equation.
        force: Added to the Korteweg force of the flow solve.

    """

    phase: Callable[[float], ScalarField]
    nutrient: Callable[[float], ScalarField]
    force: Callable[[float], FaceField]


@dataclass(frozen=True)
class SimConfig:
    """
    A validated simulation configuration.

    Attributes:
        grid: Discretization of the domain.
        model: Physical constants.
        sources: Source pair (h, b).
        phi0: Initial phase field.
        sigma0: Initial nutrient.
        dt: Nominal time step.
        t_end: Final time.
        flow_enabled: Solve for the velocity; u = 0 otherwise.
        flow: Flow solve settings; its epsilon matches model.epsilon.
        numerics: Solver knobs.
        output: File output settings.
        experiment: Experiment section as loaded, empty for plain runs.
        raw: The configuration mapping as loaded, echoed into the summary.

    """

    grid: GridSpec
    model: ModelParams
    sources: SourceSpec
    phi0: ScalarField
    sigma0: ScalarField
    dt: float
    t_end: float
    flow_enabled: bool = True
    flow: FlowSolveParams = field(default_factory=FlowSolveParams)
    numerics: NumericsSettings = field(default_factory=NumericsSettings)
    output: OutputSettings = field(default_factory=OutputSettings)
    experiment: dict[str, Any] = field(default_factory=dict)
    raw: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Check the time window and the shared grid."""
        if not self.dt > 0 or not self.t_end > 0:
            msg = f"dt and t_end must be positive, got dt={self.dt}, t_end={self.t_end}"
            raise ChbConfigurationError(msg)
        if self.phi0.grid != self.grid or self.sigma0.grid != self.grid:
            msg = "Initial data must live on the configured grid"
            raise ChbConfigurationError(msg)
        if self.flow.epsilon != self.model.epsilon:
            msg = f"Flow epsilon {self.flow.epsilon} differs from model epsilon {self.model.epsilon}"
            raise ChbConfigurationError(msg)

    @property
    def steps(self) -> int:
        """Number of nominal steps to reach t_end."""
        return max(1, math.ceil(self.t_end / self.dt - 1e-9))

    def with_model(self, **changes: float | int | None) -> SimConfig:
        """Copy with model constants replaced, keeping the flow epsilon in step."""
        model = self.model.with_changes(**changes)
        return replace(self, model=model, flow=replace(self.flow, epsilon=model.epsilon))


@dataclass
class RunResult:
    """Outcome of one simulation run."""

    exit_code: int
    final_state: SimulationState | None
    steps: int
    t_final: float
    output_dir: Path | None = None
    records: list[DiagnosticsRecord] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
