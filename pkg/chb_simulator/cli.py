"""
Command line entry point `chb-sim`.

Subcommands:
- run: One simulation into a run directory
- validate: Assumption checks only
- sweep-darcy, sweep-n, sweep-p: Parameter sweeps from the experiment section
- mms: Manufactured-solution refinement study
- tabulate-constitutive: CSV of the constitutive functions

Every run directory receives the configuration echo (config.yaml), the
validator report (validation.json) and a summary.json with a version stamp.
"""

from __future__ import annotations

import argparse
from collections.abc import Callable, Sequence
from dataclasses import replace
from pathlib import Path
import sys
from typing import Any

import numpy as np

from .config_handler import ValidationReport, apply_overrides, dump_config, load_config_file, validate_config
from .const import (
    CONF_DARCY_SWEEP,
    CONF_DIRECTORY,
    CONF_EPS_LIST,
    CONF_MMS,
    CONF_N_LIST,
    CONF_N_SWEEP,
    CONF_OUTPUT,
    CONF_P_LIST,
    CONF_P_SWEEP,
    CONF_RUN_NAME,
    DEFAULT_OUTPUT_DIRECTORY,
    DEFAULT_PENALTY_POWER,
    DEFAULT_Q0,
    DEFAULT_RUN_NAME,
    EXIT_OK,
    EXIT_VALIDATION,
    LOGGER,
)
from .constitutive import PotentialParams, SensitivityParams, tabulate_constitutive, write_constitutive_table
from .coordinator import SimulationCoordinator
from .coordinator.error_handling import exit_code_for
from .data import SimConfig
from .diagnostics import write_summary
from .exceptions import ChbConfigurationError, ChbError
from .experiments import (
    SweepTable,
    experiment_darcy_sweep,
    experiment_mms,
    experiment_n_sweep,
    experiment_p_sweep,
)
from .utils import run_directory_name, setup_logging, version_stamp

CONFIG_ECHO = "config.yaml"
VALIDATION_REPORT = "validation.json"
SUMMARY = "summary.json"

ExperimentRunner = Callable[[SimConfig, dict[str, Any], Path], SweepTable]


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, required=True, help="YAML run configuration")
    common.add_argument("--out", type=Path, help="Run directory (overrides output.directory)")
    common.add_argument("--seed", type=int, help="Seed of the initial noise")
    common.add_argument("--snapshot-every", type=int, help="Field snapshot cadence in steps")
    common.add_argument(
        "--binary-fields", action="store_true", default=None, help="Write snapshots as little-endian float64"
    )
    common.add_argument("--verbose", action="store_true", help="Debug logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per subcommand."""
    parser = argparse.ArgumentParser(prog="chb-sim", description="Chemotaxis Cahn-Hilliard-Brinkman simulator")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    subparsers.add_parser("run", parents=[common], help="Run one simulation")
    subparsers.add_parser("validate", parents=[common], help="Check the configuration assumptions")
    subparsers.add_parser("sweep-darcy", parents=[common], help="Brinkman runs against the Darcy run")
    subparsers.add_parser("sweep-n", parents=[common], help="Sweep the regularization index")
    subparsers.add_parser("sweep-p", parents=[common], help="Sweep the sensitivity exponent")
    subparsers.add_parser("mms", parents=[common], help="Manufactured-solution convergence study")

    tabulate = subparsers.add_parser("tabulate-constitutive", help="Tabulate the constitutive functions")
    tabulate.add_argument("--out", type=Path, required=True, help="CSV file to write")
    tabulate.add_argument("--p", type=float, default=2.0, help="Sensitivity exponent in (1, 2]")
    tabulate.add_argument("--chi", type=float, default=0.0, help="Chemotactic coefficient")
    tabulate.add_argument("--lambda", dest="lam", type=float, default=0.0, help="Concavity of the potential")
    tabulate.add_argument("--n", type=int, help="Regularization index; exact potential when omitted")
    tabulate.add_argument("--q0", type=float, default=DEFAULT_Q0, help="Penalty growth exponent")
    tabulate.add_argument("--penalty-power", type=float, default=DEFAULT_PENALTY_POWER, help="Penalty exponent k")
    tabulate.add_argument("--s-min", type=float, default=-0.99, help="Smallest argument")
    tabulate.add_argument("--s-max", type=float, default=0.99, help="Largest argument")
    tabulate.add_argument("--points", type=int, default=199, help="Number of arguments")
    tabulate.add_argument("--verbose", action="store_true", help="Debug logging")
    return parser


def _run_directory(raw: dict[str, Any], seed: int | None) -> Path:
    directory = raw.get(CONF_OUTPUT, {}).get(CONF_DIRECTORY)
    if directory is not None:
        return Path(directory)
    return Path(DEFAULT_OUTPUT_DIRECTORY) / run_directory_name(str(raw.get(CONF_RUN_NAME, DEFAULT_RUN_NAME)), seed)


def _report_failures(report: ValidationReport) -> None:
    for check in report.failures():
        sys.stderr.write(f"validation failed: {check.name}: {check.message}\n")


def _load(args: argparse.Namespace) -> tuple[dict[str, Any], SimConfig | None, ValidationReport]:
    raw = load_config_file(args.config)
    raw = apply_overrides(
        raw,
        seed=args.seed,
        out=args.out,
        snapshot_every=args.snapshot_every,
        binary_fields=args.binary_fields,
    )
    config, report = validate_config(raw, base_dir=args.config.parent)
    return raw, config, report


def _write_artifacts(directory: Path, raw: dict[str, Any], report: ValidationReport) -> None:
    dump_config(raw, directory / CONFIG_ECHO)
    write_summary(directory / VALIDATION_REPORT, report.as_dict())


def cmd_validate(args: argparse.Namespace) -> int:
    """Check the configuration; exit 2 on a failed blocking check."""
    raw, _config, report = _load(args)
    if args.out is not None:
        _write_artifacts(args.out, raw, report)
    for check in report.checks:
        status = "ok" if check.passed else ("advisory" if check.advisory else "FAILED")
        sys.stdout.write(f"{status:>8}  {check.name}: {check.message}\n")
    return EXIT_OK if report.passed else EXIT_VALIDATION


def cmd_run(args: argparse.Namespace) -> int:
    """Validate, then run one simulation into its run directory."""
    raw, config, report = _load(args)
    directory = _run_directory(raw, args.seed)
    _write_artifacts(directory, raw, report)
    if config is None:
        _report_failures(report)
        return EXIT_VALIDATION
    config = replace(config, output=replace(config.output, directory=directory))
    result = SimulationCoordinator(config, validator=report.as_dict()).run()
    sys.stdout.write(f"{directory}: exit {result.exit_code} after {result.steps} steps, t={result.t_final:.6g}\n")
    return result.exit_code


def _darcy(config: SimConfig, section: dict[str, Any], root: Path) -> SweepTable:
    return experiment_darcy_sweep(config, section[CONF_DARCY_SWEEP][CONF_EPS_LIST], root)


def _n(config: SimConfig, section: dict[str, Any], root: Path) -> SweepTable:
    return experiment_n_sweep(config, section[CONF_N_SWEEP][CONF_N_LIST], root)


def _p(config: SimConfig, section: dict[str, Any], root: Path) -> SweepTable:
    return experiment_p_sweep(config, section[CONF_P_SWEEP][CONF_P_LIST], root)


def _mms(config: SimConfig, section: dict[str, Any], root: Path) -> SweepTable:
    return experiment_mms(config, section[CONF_MMS], root)


EXPERIMENTS: dict[str, tuple[str, ExperimentRunner]] = {
    "sweep-darcy": (CONF_DARCY_SWEEP, _darcy),
    "sweep-n": (CONF_N_SWEEP, _n),
    "sweep-p": (CONF_P_SWEEP, _p),
    "mms": (CONF_MMS, _mms),
}


def cmd_experiment(args: argparse.Namespace) -> int:
    """Run the experiment named by the subcommand and write its table."""
    key, runner = EXPERIMENTS[args.command]
    raw, config, report = _load(args)
    root = _run_directory(raw, args.seed)
    _write_artifacts(root, raw, report)
    if config is None:
        _report_failures(report)
        return EXIT_VALIDATION
    if key not in config.experiment:
        sys.stderr.write(f"configuration has no experiment.{key} section\n")
        return EXIT_VALIDATION
    table = runner(config, config.experiment, root)
    table.write_csv(root / f"{table.name}.csv")
    write_summary(
        root / SUMMARY,
        {"experiment": table.as_dict(), "validator": report.as_dict(), "version": version_stamp()},
    )
    sys.stdout.write(table.format() + "\n")
    return table.exit_code


def cmd_tabulate(args: argparse.Namespace) -> int:
    """Write the constitutive table on a uniform argument grid."""
    potential = PotentialParams(lam=args.lam, n=args.n, q0=args.q0, penalty_power=args.penalty_power)
    sensitivity = SensitivityParams(p=args.p, chi=args.chi)
    table = tabulate_constitutive(np.linspace(args.s_min, args.s_max, args.points), potential, sensitivity)
    path = write_constitutive_table(args.out, table)
    sys.stdout.write(f"{path}\n")
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "run": cmd_run,
    "validate": cmd_validate,
    "tabulate-constitutive": cmd_tabulate,
    **dict.fromkeys(EXPERIMENTS, cmd_experiment),
}


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, dispatch and map errors to exit codes."""
    args = build_parser().parse_args(argv)
    setup_logging(verbose=args.verbose)
    try:
        return COMMANDS[args.command](args)
    except ChbConfigurationError as err:
        LOGGER.error("Invalid configuration: %s", err)
        sys.stderr.write(f"error: {err}\n")
        return EXIT_VALIDATION
    except ChbError as err:
        LOGGER.error("%s failed: %s", args.command, err)
        return exit_code_for(err)


if __name__ == "__main__":
    sys.exit(main())
