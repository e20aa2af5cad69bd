"""
Machine-readable summary of a run.

Sectioned like a diagnostics dump: run metadata, the echoed configuration,
the validator report, final invariant verdicts, theorem norms and the error
that ended the run, if any.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
import json
from pathlib import Path
from typing import Any

import numpy as np

from chb_simulator.const import MASS_ODE_TOL, SUMMARY_MESSAGE_MAX_LENGTH
from chb_simulator.data import ModelParams
from chb_simulator.utils import truncate_string

from .norms import theorem_norm_report
from .record import DiagnosticsRecord


def invariant_verdicts(history: Sequence[DiagnosticsRecord], mp: ModelParams) -> dict[str, Any]:
    """Final verdicts on positivity, the phase interval, mass and energy."""
    if not history:
        return {}
    min_sigma = min(record.min_sigma for record in history)
    sup_phi = max(record.max_abs_phi for record in history)
    mass_error = max(record.mass_error for record in history)
    energies = np.array([record.energy for record in history])
    residuals = np.array([record.energy_residual for record in history[1:]]) if len(history) > 1 else np.zeros(1)
    return {
        "min_sigma": min_sigma,
        "sigma_nonnegative": min_sigma >= 0.0,
        "sup_abs_phi": sup_phi,
        "phi_inside_interval": sup_phi < 1.0 if mp.n is None else None,
        "max_mass_error": mass_error,
        "mass_matches_reference": mass_error <= MASS_ODE_TOL,
        "energy_nonincreasing": bool(np.all(np.diff(energies) <= 1e-12 * (1.0 + np.abs(energies[:-1])))),
        "max_energy_residual": float(np.max(residuals)),
        "max_abs_entropy_residual": max(abs(record.entropy_residual) for record in history),
    }


def build_run_summary(
    *,
    run: Mapping[str, Any],
    config: Mapping[str, Any],
    validator: Mapping[str, Any] | None,
    history: Sequence[DiagnosticsRecord],
    mp: ModelParams | None,
    error: BaseException | None = None,
) -> dict[str, Any]:
    """
    Assemble the summary dict.

    Args:
        run: Exit code, steps, final time, version and output paths.
        config: Configuration as loaded.
        validator: Validation report as a dict.
        history: Recorded diagnostics.
        mp: Model constants, or None if the run never started.
        error: Exception that ended the run.

    Returns:
        A JSON-serializable dict.

    """
    norms: dict[str, float] = {}
    invariants: dict[str, Any] = {}
    if history and mp is not None:
        norms = theorem_norm_report(history, mp)
        invariants = invariant_verdicts(history, mp)
    error_info = {
        "last_exception": truncate_string(str(error), SUMMARY_MESSAGE_MAX_LENGTH) if error else None,
        "last_exception_type": type(error).__name__ if error else None,
    }
    return {
        "run": dict(run),
        "config": dict(config),
        "validator": dict(validator) if validator is not None else None,
        "invariants": invariants,
        "norms": norms,
        "error": error_info,
    }


def write_summary(path: Path | str, summary: Mapping[str, Any]) -> Path:
    """Write the summary as indented JSON."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(summary, indent=2, default=_json_default) + "\n", encoding="utf-8")
    return target


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


__all__ = ["build_run_summary", "invariant_verdicts", "write_summary"]
