"""
Member runs of the sweep experiments.

Members are independent simulations; they run in a process pool whose size
is capped by the CHB_THREADS environment variable and merged here in the
order they were submitted. Each member returns a picklable MemberResult.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
import multiprocessing
import os
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from chb_simulator.const import ENV_THREADS, EXIT_OK, LOGGER
from chb_simulator.coordinator import SimulationCoordinator
from chb_simulator.data import ManufacturedForcing, SimConfig, SimulationState
from chb_simulator.diagnostics import DiagnosticsRecord
from chb_simulator.exceptions import ChbConfigurationError
from chb_simulator.utils import slugify_name

ForcingBuilder = Callable[[SimConfig], ManufacturedForcing]


@dataclass(frozen=True)
class MemberSpec:
    """
    One simulation of a sweep.

    Attributes:
        label: Row label, also the name of the member's output directory.
        config: Configuration of the member.
        forcing: Module-level builder of manufactured right-hand sides.
        keep_velocity: Collect the velocity of every accepted step.

    """

    label: str
    config: SimConfig
    forcing: ForcingBuilder | None = None
    keep_velocity: bool = False


@dataclass
class MemberResult:
    """Outcome of one member run."""

    label: str
    exit_code: int
    steps: int
    t_final: float
    final_state: SimulationState | None
    records: list[DiagnosticsRecord] = field(default_factory=list)
    dts: NDArray[np.float64] | None = None
    velocities: NDArray[np.float64] | None = None

    @property
    def ok(self) -> bool:
        """Whether the member reached t_end."""
        return self.exit_code == EXIT_OK


def sweep_workers(members: int, requested: int | None = None) -> int:
    """
    Worker count for a sweep of the given size.

    CHB_THREADS caps the pool; without it the cap is the CPU count.

    Raises:
        ChbConfigurationError: If CHB_THREADS is not a positive integer.

    """
    env = os.environ.get(ENV_THREADS)
    cap = os.cpu_count() or 1
    if env is not None:
        try:
            cap = int(env)
        except ValueError as err:
            msg = f"{ENV_THREADS} must be a positive integer, got {env!r}"
            raise ChbConfigurationError(msg) from err
        if cap < 1:
            msg = f"{ENV_THREADS} must be a positive integer, got {env!r}"
            raise ChbConfigurationError(msg)
    if requested is not None:
        cap = min(cap, requested)
    return max(1, min(cap, members))


def member_output(config: SimConfig, root: Path | None, label: str) -> SimConfig:
    """Point a member at its own subdirectory of the sweep directory, or keep it in memory."""
    directory = root / slugify_name(label) if root is not None else None
    return replace(config, output=replace(config.output, directory=directory))


def run_member(spec: MemberSpec) -> MemberResult:
    """Run one member; module level so process pools can pickle it."""
    forcing = spec.forcing(spec.config) if spec.forcing is not None else None
    coordinator = SimulationCoordinator(spec.config, forcing=forcing)
    velocities: list[NDArray[np.float64]] = []
    if spec.keep_velocity:

        def collect_velocity(state: SimulationState, _record: DiagnosticsRecord) -> None:
            velocities.append(state.u.flat.copy())

        coordinator.add_listener(collect_velocity)
    result = coordinator.run()
    LOGGER.info("Member %s finished with exit code %d", spec.label, result.exit_code)
    records = result.records
    return MemberResult(
        label=spec.label,
        exit_code=result.exit_code,
        steps=result.steps,
        t_final=result.t_final,
        final_state=result.final_state,
        records=records,
        dts=np.array([record.dt for record in records]) if spec.keep_velocity else None,
        velocities=np.array(velocities) if spec.keep_velocity and velocities else None,
    )


def run_members(specs: Sequence[MemberSpec], max_workers: int | None = None) -> list[MemberResult]:
    """
    Run every member, in parallel when more than one worker is allowed.

    Returns:
        Results in the order of specs.

    """
    workers = sweep_workers(len(specs), max_workers)
    LOGGER.info("Running %d sweep members on %d worker(s)", len(specs), workers)
    if workers == 1:
        return [run_member(spec) for spec in specs]
    with ProcessPoolExecutor(max_workers=workers, mp_context=multiprocessing.get_context("spawn")) as pool:
        return list(pool.map(run_member, specs))


__all__ = ["ForcingBuilder", "MemberResult", "MemberSpec", "member_output", "run_member", "run_members", "sweep_workers"]
