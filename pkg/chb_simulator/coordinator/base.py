"""
Operator-split step loop of the coupled system.

Each step runs, in this order, the flow solve driven by the Korteweg force of
the current fields, the implicit Cahn-Hilliard-Oono step, the nutrient step
at the new phase field, and the diagnostics of the new state. A failed step
is retried from the same state as 2**k substeps of dt / 2**k, at most
MAX_DT_HALVINGS times, so the run stays on the nominal time grid.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from contextlib import nullcontext
from dataclasses import replace
import time
from typing import Any

from chb_simulator.cahn_hilliard import CHStepParams, ch_step, mass_ode_step
from chb_simulator.const import EXIT_OK, LOGGER, MAX_DT_HALVINGS
from chb_simulator.data import ManufacturedForcing, RunResult, SimConfig, SimulationState
from chb_simulator.diagnostics import (
    DiagnosticsCsvWriter,
    DiagnosticsRecord,
    build_run_summary,
    make_record,
    write_summary,
)
from chb_simulator.exceptions import ChbError
from chb_simulator.grid import mean
from chb_simulator.nutrient import NutrientStepParams, sigma_step
from chb_simulator.utils import version_stamp

from .data_processing import build_initial_state, flow_from_fields, is_due, mean_phase_source, write_snapshots
from .error_handling import calculate_retry_dt, exit_code_for, log_step_failure, should_retry_step
from .listeners import StepListener, create_step_callback, track_step_performance


class SimulationCoordinator:
    """
    Runs one simulation and owns its output directory.

    Attributes:
        config: The validated configuration.
        forcing: Manufactured right-hand sides, if any.
        history: Diagnostics records of the accepted steps, initial record first.

    """

    def __init__(
        self,
        config: SimConfig,
        *,
        forcing: ManufacturedForcing | None = None,
        validator: Mapping[str, Any] | None = None,
        listeners: Iterable[StepListener] = (),
        max_halvings: int = MAX_DT_HALVINGS,
    ) -> None:
        """Initialize the coordinator; nothing is computed until run."""
        self.config = config
        self.forcing = forcing
        self.validator = validator
        self.max_halvings = max_halvings
        self.history: list[DiagnosticsRecord] = []
        self._listeners = [
            create_step_callback(getattr(listener, "__name__", repr(listener)), listener) for listener in listeners
        ]
        self._mass_ref = 0.0

    def add_listener(self, listener: StepListener) -> None:
        """Register a listener called after every accepted step."""
        self._listeners.append(create_step_callback(getattr(listener, "__name__", repr(listener)), listener))

    def initial_state(self) -> SimulationState:
        """Initial fields together with mu and the flow they drive."""
        return build_initial_state(self.config, self.forcing)

    def advance(self, state: SimulationState, dt: float) -> tuple[SimulationState, int]:
        """
        One operator-split step of size dt.

        Args:
            state: Fields at the old time level.
            dt: Step size.

        Returns:
            The new state (step counter unchanged) and the Newton iteration count.

        Raises:
            ChbStepError: On Newton failure or a violated CFL guard.
            ChbSolverError: If the flow solve stalls.
            ChbInvariantError: If a structural invariant breaks.

        """
        config = self.config
        mp, src, numerics = config.model, config.sources, config.numerics
        t_new = state.t + dt
        forcing = self.forcing

        u, pi = flow_from_fields(config, state.phi, state.mu, state.sigma, forcing, t_new)
        phase = ch_step(
            state.phi,
            state.sigma,
            u,
            src,
            mp,
            CHStepParams(
                dt=dt,
                newton_tol=numerics.newton_tol,
                newton_max_iter=numerics.newton_max_iter,
                linear_tol=numerics.linear_tol,
                advection=numerics.advection,
            ),
            forcing.phase(t_new) if forcing is not None else None,
        )
        sigma = sigma_step(
            state.sigma,
            phase.phi,
            u,
            src,
            mp,
            NutrientStepParams(
                dt=dt,
                mobility_face_rule=numerics.mobility_face_rule,
                advection=numerics.advection,
                sigma_floor=numerics.sigma_floor,
                cfl_safety=numerics.nutrient_cfl,
            ),
            forcing.nutrient(t_new) if forcing is not None else None,
        )
        new_state = SimulationState(t=t_new, phi=phase.phi, mu=phase.mu, sigma=sigma, u=u, pi=pi, step=state.step)
        return new_state, phase.iterations

    def _advance_with_retries(self, state: SimulationState, dt: float) -> tuple[SimulationState, int, float]:
        """Advance by dt, halving on numerical failures; returns the new mass reference too."""
        total_attempts = self.max_halvings + 1
        attempt = -1
        substeps, sub_dt = 1, dt
        while True:
            try:
                current, mass_ref, iterations = state, self._mass_ref, 0
                for _ in range(substeps):
                    hbar = mean_phase_source(current, self.config.sources, self.forcing, current.t + sub_dt)
                    current, its = self.advance(current, sub_dt)
                    mass_ref = mass_ode_step(mass_ref, sub_dt, self.config.model.ell, hbar)
                    iterations += its
            except ChbError as err:
                attempt += 1
                if not should_retry_step(err, attempt, self.max_halvings):
                    log_step_failure(err, attempt, attempt + 1, state.t)
                    raise
                log_step_failure(err, attempt, total_attempts, state.t)
                sub_dt = calculate_retry_dt(dt, attempt)
                substeps = 2 ** (attempt + 1)
                continue
            if substeps > 1:
                LOGGER.info("Step from t=%.6g completed with %d substeps", state.t, substeps)
            return replace(current, t=state.t + dt, step=state.step + 1), iterations, mass_ref

    def run(self) -> RunResult:
        """
        Run to t_end and write the run artifacts.

        Returns:
            The run result; exit_code is 0 on success, 3 on a broken
            invariant, 4 on numerical failure after all retries.

        """
        config = self.config
        output = config.output
        directory = output.directory
        self.history = []
        state: SimulationState | None = None
        error: ChbError | None = None
        exit_code = EXIT_OK
        LOGGER.info(
            "Starting run: %dx%d grid, dt=%.3g, t_end=%.3g, %d steps",
            config.grid.nx,
            config.grid.ny,
            config.dt,
            config.t_end,
            config.steps,
        )

        csv_context = DiagnosticsCsvWriter(directory / "diagnostics.csv") if directory is not None else nullcontext()
        with csv_context as writer:
            try:
                state = self.initial_state()
                self._mass_ref = mean(state.phi)
                self._accept(state, None, writer, 0, final=False)
                for step in range(1, config.steps + 1):
                    started = time.perf_counter()
                    dt = min(config.dt, config.t_end - state.t) if step == config.steps else config.dt
                    previous = state
                    state, iterations, self._mass_ref = self._advance_with_retries(state, dt)
                    self._accept(state, previous, writer, iterations, final=step == config.steps, dt=dt)
                    track_step_performance(step, time.perf_counter() - started)
            except ChbError as err:
                error = err
                exit_code = exit_code_for(err)
                t_stop = state.t if state is not None else 0.0
                LOGGER.error("Run stopped at t=%.6g with exit code %d: %s", t_stop, exit_code, err)

        steps = self.history[-1].step if self.history else 0
        summary = build_run_summary(
            run={
                "exit_code": exit_code,
                "steps": steps,
                "t_final": state.t if state is not None else 0.0,
                "version": version_stamp(),
                "output_dir": str(directory) if directory is not None else None,
            },
            config=config.raw,
            validator=self.validator,
            history=self.history,
            mp=config.model,
            error=error,
        )
        if directory is not None:
            write_summary(directory / "summary.json", summary)
        LOGGER.info("Run finished with exit code %d after %d steps", exit_code, steps)
        return RunResult(
            exit_code=exit_code,
            final_state=state,
            steps=steps,
            t_final=state.t if state is not None else 0.0,
            output_dir=directory,
            records=list(self.history),
            summary=summary,
        )

    def _accept(
        self,
        state: SimulationState,
        previous: SimulationState | None,
        writer: DiagnosticsCsvWriter | None,
        iterations: int,
        *,
        final: bool,
        dt: float = 0.0,
    ) -> None:
        """Record an accepted state, write due outputs and notify listeners."""
        config = self.config
        record = make_record(
            state,
            config.model,
            config.sources,
            dt=dt,
            mass_ode_ref=self._mass_ref,
            rule=config.numerics.mobility_face_rule,
            previous_state=previous,
            previous_record=self.history[-1] if self.history else None,
            newton_iterations=iterations,
        )
        self.history.append(record)
        output = config.output
        if writer is not None and is_due(state.step, output.csv_every, final=final):
            writer.write(record)
        if output.directory is not None and is_due(state.step, output.snapshot_every, final=final):
            write_snapshots(output.directory, state, binary=output.binary_fields)
        for listener in self._listeners:
            listener(state, record)


__all__ = ["SimulationCoordinator"]
