"""Turn a loaded configuration mapping into a validated SimConfig."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import voluptuous as vol
from voluptuous.humanize import humanize_error

from chb_simulator.const import (
    CONF_ADVECTION,
    CONF_B0,
    CONF_B_INF,
    CONF_BINARY_FIELDS,
    CONF_CAPACITY,
    CONF_CHI,
    CONF_CSV_EVERY,
    CONF_DIRECTORY,
    CONF_DT,
    CONF_ELL,
    CONF_ENABLED,
    CONF_EPSILON,
    CONF_EXPERIMENT,
    CONF_FLOW,
    CONF_GRID,
    CONF_H_BOUND,
    CONF_INITIAL_DATA,
    CONF_KRYLOV_MAX_ITER,
    CONF_KRYLOV_TOL,
    CONF_LAMBDA,
    CONF_LINEAR_TOL,
    CONF_LX,
    CONF_LY,
    CONF_MOBILITY_RULE,
    CONF_MODEL,
    CONF_NAME,
    CONF_NEWTON_MAX_ITER,
    CONF_NEWTON_TOL,
    CONF_NUMERICS,
    CONF_NUTRIENT_CFL,
    CONF_NX,
    CONF_NY,
    CONF_OUTPUT,
    CONF_P,
    CONF_PENALTY_POWER,
    CONF_PHI0,
    CONF_PRESSURE_SIGN,
    CONF_Q0,
    CONF_Q_MONITOR,
    CONF_REGULARIZATION,
    CONF_SIGMA0,
    CONF_SIGMA_FLOOR,
    CONF_SNAPSHOT_EVERY,
    CONF_SOURCES,
    CONF_T_END,
    CONF_TIME,
    LOGGER,
    REGULARIZATION_EXACT,
)
from chb_simulator.constitutive import SourceSpec, builtin_sources
from chb_simulator.data import ModelParams, NumericsSettings, OutputSettings, SimConfig
from chb_simulator.exceptions import ChbConfigurationError, ChbDomainError
from chb_simulator.flow import FlowSolveParams
from chb_simulator.grid import GridSpec

from .initial_data import build_phi0, build_sigma0
from .schemas import validate_config_schema
from .validators import (
    ValidationReport,
    check_model,
    check_phi0,
    check_sigma0,
    check_source_bound,
    check_source_pair,
)

_SOURCE_CONSTANTS = (CONF_H_BOUND, CONF_B0, CONF_B_INF, CONF_CAPACITY)


def build_model_params(section: dict[str, Any]) -> ModelParams:
    """ModelParams from a validated model section; "exact" maps to n = None."""
    regularization = section[CONF_REGULARIZATION]
    return ModelParams(
        chi=section[CONF_CHI],
        ell=section[CONF_ELL],
        lam=section[CONF_LAMBDA],
        p=section[CONF_P],
        epsilon=section[CONF_EPSILON],
        n=None if regularization == REGULARIZATION_EXACT else int(regularization),
        q0=section[CONF_Q0],
        penalty_power=section[CONF_PENALTY_POWER],
        q_monitor=section[CONF_Q_MONITOR],
    )


def build_sources(section: dict[str, Any], ell: float) -> SourceSpec:
    """Source pair from a validated sources section."""
    constants = {key: section[key] for key in _SOURCE_CONSTANTS if key in section}
    return builtin_sources(section[CONF_NAME], constants, ell=ell)


def build_sim_config(data: dict[str, Any], base_dir: Path | None = None, raw: dict[str, Any] | None = None) -> SimConfig:
    """
    Assemble a SimConfig from a schema-validated mapping.

    Args:
        data: Output of validate_config_schema.
        base_dir: Directory that relative from_file paths resolve against.
        raw: Mapping as loaded, kept for the configuration echo.

    Raises:
        ChbConfigurationError: If a constant or initial field is inadmissible.

    """
    grid_section = data[CONF_GRID]
    grid = GridSpec(grid_section[CONF_NX], grid_section[CONF_NY], grid_section[CONF_LX], grid_section[CONF_LY])
    model = build_model_params(data[CONF_MODEL])
    flow = data[CONF_FLOW]
    numerics = data[CONF_NUMERICS]
    output = data[CONF_OUTPUT]
    directory = output.get(CONF_DIRECTORY)
    return SimConfig(
        grid=grid,
        model=model,
        sources=build_sources(data[CONF_SOURCES], model.ell),
        phi0=build_phi0(grid, data[CONF_INITIAL_DATA][CONF_PHI0], base_dir),
        sigma0=build_sigma0(grid, data[CONF_INITIAL_DATA][CONF_SIGMA0], base_dir),
        dt=data[CONF_TIME][CONF_DT],
        t_end=data[CONF_TIME][CONF_T_END],
        flow_enabled=flow[CONF_ENABLED],
        flow=FlowSolveParams(
            epsilon=model.epsilon,
            krylov_tol=flow[CONF_KRYLOV_TOL],
            krylov_max_iter=flow[CONF_KRYLOV_MAX_ITER],
            pressure_sign=flow[CONF_PRESSURE_SIGN],
        ),
        numerics=NumericsSettings(
            newton_tol=numerics[CONF_NEWTON_TOL],
            newton_max_iter=numerics[CONF_NEWTON_MAX_ITER],
            linear_tol=numerics[CONF_LINEAR_TOL],
            mobility_face_rule=numerics[CONF_MOBILITY_RULE],
            advection=numerics[CONF_ADVECTION],
            sigma_floor=numerics[CONF_SIGMA_FLOOR],
            nutrient_cfl=numerics[CONF_NUTRIENT_CFL],
        ),
        output=OutputSettings(
            directory=Path(directory) if directory is not None else None,
            snapshot_every=output[CONF_SNAPSHOT_EVERY],
            csv_every=output[CONF_CSV_EVERY],
            binary_fields=output[CONF_BINARY_FIELDS],
        ),
        experiment=dict(data[CONF_EXPERIMENT]),
        raw=raw if raw is not None else data,
    )


def validate_config(raw: Any, base_dir: Path | None = None) -> tuple[SimConfig | None, ValidationReport]:
    """
    Validate a loaded configuration and build it when every check passes.

    Schema errors, the source bound H / ell < 1, the sampled source bounds and
    the initial data checks are blocking; the returned config is None unless
    report.passed.

    Args:
        raw: Mapping as loaded from YAML.
        base_dir: Directory that relative from_file paths resolve against.

    Returns:
        The config (or None) and the report of every check.

    """
    report = ValidationReport()
    try:
        data = validate_config_schema(raw)
    except vol.Invalid as err:
        report.add("schema", passed=False, message=humanize_error(raw, err))
        return None, report
    report.add("schema", passed=True, message="configuration matches the schema")

    model_section = data[CONF_MODEL]
    report.extend([check_source_bound(data[CONF_SOURCES], model_section[CONF_ELL])])
    if not report.passed:
        return None, report

    try:
        config = build_sim_config(data, base_dir, raw=raw)
    except ChbConfigurationError as err:
        report.add("build", passed=False, message=str(err))
        return None, report

    report.extend(check_source_pair(config.sources))
    report.extend(check_model(config.model))
    try:
        report.extend(check_phi0(config.phi0, config.model))
    except ChbDomainError as err:
        report.add("phi0_potential", passed=False, message=str(err))
    report.extend(check_sigma0(config.sigma0, config.model))

    if report.passed:
        LOGGER.info("Configuration passed %d checks", len(report.checks))
        return config, report
    return None, report


__all__ = ["build_model_params", "build_sim_config", "build_sources", "validate_config"]
