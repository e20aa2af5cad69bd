"""Tests for the diagnostics record, its CSV and the run summary."""

from __future__ import annotations

from dataclasses import replace
import json

import pytest

from chb_simulator.diagnostics import (
    CSV_COLUMNS,
    DiagnosticsCsvWriter,
    build_run_summary,
    invariant_verdicts,
    make_record,
    read_diagnostics_csv,
    write_summary,
)
from chb_simulator.exceptions import ChbStepError

pytestmark = pytest.mark.unit


@pytest.fixture
def history(rest_state, zero_sources, model_params):
    records = [make_record(rest_state, model_params, zero_sources, dt=0.0, mass_ode_ref=0.0)]
    for step in (1, 2):
        state = replace(rest_state, t=0.1 * step, step=step)
        records.append(
            make_record(
                state,
                model_params,
                zero_sources,
                dt=0.1,
                mass_ode_ref=0.0,
                previous_state=rest_state,
                previous_record=records[-1],
                newton_iterations=1,
            )
        )
    return records


def test_record_of_rest_state(history):
    record = history[0]
    assert record.min_sigma == 1.0
    assert record.max_abs_phi == 0.0
    assert record.mass_error == 0.0
    assert record.h_norm_sq == 0.0
    assert record.lnsigma_l1 == 0.0
    assert (record.exponent_p0, record.exponent_s, record.exponent_r) == (4.0, 2.0, 4.0)


def test_row_follows_csv_columns(history):
    assert tuple(history[0].as_row()) == CSV_COLUMNS
    assert "entropy_gamma_hat_integral" in CSV_COLUMNS
    assert len(set(CSV_COLUMNS)) == len(CSV_COLUMNS)


def test_csv_writer(tmp_path, history):
    path = tmp_path / "run" / "diagnostics.csv"
    with DiagnosticsCsvWriter(path) as writer:
        for record in history:
            writer.write(record)
    assert writer.rows == 3
    header = path.read_text(encoding="utf-8").splitlines()[0]
    assert header.split(",") == list(CSV_COLUMNS)
    columns = read_diagnostics_csv(path)
    assert columns["step"] == [0.0, 1.0, 2.0]
    assert columns["t"] == pytest.approx([0.0, 0.1, 0.2])
    assert columns["energy"] == pytest.approx([record.energy for record in history])


def test_csv_writer_outside_context(tmp_path, history):
    writer = DiagnosticsCsvWriter(tmp_path / "diagnostics.csv")
    with pytest.raises(RuntimeError):
        writer.write(history[0])


def test_invariant_verdicts(history, model_params):
    verdicts = invariant_verdicts(history, model_params)
    assert verdicts["sigma_nonnegative"] is True
    assert verdicts["phi_inside_interval"] is True
    assert verdicts["mass_matches_reference"] is True
    assert verdicts["energy_nonincreasing"] is True
    assert verdicts["max_energy_residual"] == pytest.approx(0.0, abs=1e-14)


def test_invariant_verdicts_regularized_leave_interval_open(history, model_params):
    assert invariant_verdicts(history, model_params.with_changes(n=8))["phi_inside_interval"] is None
    assert invariant_verdicts([], model_params) == {}


def test_summary_sections(tmp_path, history, model_params):
    error = ChbStepError("Newton did not converge")
    summary = build_run_summary(
        run={"exit_code": 4, "steps": 2},
        config={"grid": {"nx": 16}},
        validator={"passed": True},
        history=history,
        mp=model_params,
        error=error,
    )
    assert set(summary) == {"run", "config", "validator", "invariants", "norms", "error"}
    assert summary["error"]["last_exception_type"] == "ChbStepError"
    assert summary["norms"]["P0"] == 4.0

    path = write_summary(tmp_path / "summary.json", summary)
    loaded = json.loads(path.read_text(encoding="utf-8"))
    assert loaded["run"]["exit_code"] == 4
    assert loaded["invariants"]["sigma_nonnegative"] is True


def test_summary_without_history():
    summary = build_run_summary(run={"exit_code": 2}, config={}, validator=None, history=[], mp=None)
    assert summary["norms"] == {}
    assert summary["invariants"] == {}
    assert summary["error"]["last_exception"] is None


def test_summary_shortens_long_error_messages():
    error = ChbStepError("residuals " + "1.0e-3 " * 200)
    summary = build_run_summary(run={"exit_code": 4}, config={}, validator=None, history=[], mp=None, error=error)
    message = summary["error"]["last_exception"]
    assert len(message) == 500
    assert message.startswith("residuals 1.0e-3")
    assert message.endswith("...")
