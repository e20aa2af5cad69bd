"""Tests for the chb-sim command line."""

from __future__ import annotations

import csv
import json
import logging

import pytest
import yaml

from chb_simulator.cli import build_parser, main
from chb_simulator.const import EXIT_OK, EXIT_VALIDATION, LOGGER

pytestmark = pytest.mark.integration


@pytest.fixture(autouse=True)
def restore_logger():
    yield
    for handler in list(LOGGER.handlers):
        if handler.get_name() == LOGGER.name:
            LOGGER.removeHandler(handler)
    LOGGER.setLevel(logging.NOTSET)


@pytest.fixture
def config_file(tmp_path, raw_config):
    path = tmp_path / "run.yaml"
    path.write_text(yaml.safe_dump(raw_config))
    return path


def test_parser_requires_a_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_validate_passes(config_file, capsys):
    assert main(["validate", "--config", str(config_file)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "H_over_ell" in out
    assert "FAILED" not in out


def test_validate_rejects_the_source_bound(tmp_path, raw_config, capsys):
    raw_config["sources"] = {"name": "logistic_h_saturating", "H": 1.5}
    path = tmp_path / "bad.yaml"
    path.write_text(yaml.safe_dump(raw_config))
    out_dir = tmp_path / "report"
    assert main(["validate", "--config", str(path), "--out", str(out_dir)]) == EXIT_VALIDATION
    assert "FAILED  H_over_ell" in capsys.readouterr().out
    report = json.loads((out_dir / "validation.json").read_text())
    assert report["passed"] is False


def test_missing_config_file(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "missing.yaml")]) == EXIT_VALIDATION
    assert "Cannot read" in capsys.readouterr().err


def test_run_writes_the_run_directory(config_file, tmp_path):
    out_dir = tmp_path / "run"
    code = main(["run", "--config", str(config_file), "--out", str(out_dir), "--seed", "9", "--snapshot-every", "0"])
    assert code == EXIT_OK
    echo = yaml.safe_load((out_dir / "config.yaml").read_text())
    assert echo["initial_data"]["phi0"]["seed"] == 9
    assert echo["output"]["snapshot_every"] == 0
    assert json.loads((out_dir / "validation.json").read_text())["passed"] is True
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["run"]["exit_code"] == EXIT_OK
    assert summary["run"]["steps"] == 5
    assert (out_dir / "diagnostics.csv").is_file()
    assert sorted(path.name for path in (out_dir / "snapshots").iterdir())[0] == "mu_000000.txt"


def test_run_with_failed_validation_writes_the_report(tmp_path, raw_config):
    raw_config["initial_data"]["sigma0"] = {"kind": "constant", "value": 0.0}
    path = tmp_path / "bad.yaml"
    path.write_text(yaml.safe_dump(raw_config))
    out_dir = tmp_path / "run"
    assert main(["run", "--config", str(path), "--out", str(out_dir)]) == EXIT_VALIDATION
    assert json.loads((out_dir / "validation.json").read_text())["passed"] is False
    assert not (out_dir / "summary.json").exists()


def test_experiment_needs_its_section(config_file, tmp_path, capsys):
    assert main(["sweep-p", "--config", str(config_file), "--out", str(tmp_path / "sweep")]) == EXIT_VALIDATION
    assert "experiment.p_sweep" in capsys.readouterr().err


def test_p_sweep_command(tmp_path, raw_config, monkeypatch):
    monkeypatch.setenv("CHB_THREADS", "1")
    raw_config["experiment"] = {"p_sweep": {"p_list": [1.5, 2.0]}}
    path = tmp_path / "sweep.yaml"
    path.write_text(yaml.safe_dump(raw_config))
    out_dir = tmp_path / "sweep"
    assert main(["sweep-p", "--config", str(path), "--out", str(out_dir)]) == EXIT_OK
    with (out_dir / "p_sweep.csv").open(newline="") as handle:
        rows = list(csv.DictReader(handle))
    assert [row["p"] for row in rows] == ["1.5", "2.0"]
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["experiment"]["complete"] is True
    assert summary["version"]["package"] == "chb_simulator"


def test_tabulate_constitutive(tmp_path):
    path = tmp_path / "table.csv"
    assert main(["tabulate-constitutive", "--out", str(path), "--p", "1.5", "--points", "5"]) == EXIT_OK
    with path.open(newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["s", "alpha", "gamma", "gamma_hat", "beta_n", "F_n"]
    assert len(rows) == 6
    assert rows[1][1] == "nan"
    assert float(rows[3][4]) == 0.0
