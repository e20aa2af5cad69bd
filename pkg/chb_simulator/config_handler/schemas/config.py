"""
Run configuration schema.

Physical constants are Required with no defaults; numerical knobs default to
the DEFAULT_* constants. Values are coerced, so YAML integers are accepted
where floats are expected.
"""

from __future__ import annotations

from typing import Any

import voluptuous as vol

from chb_simulator.const import (
    CONF_ADVECTION,
    CONF_AMPLITUDE,
    CONF_B0,
    CONF_B_INF,
    CONF_BINARY_FIELDS,
    CONF_CAPACITY,
    CONF_CENTER,
    CONF_CHI,
    CONF_CSV_EVERY,
    CONF_DIRECTORY,
    CONF_DT,
    CONF_ELL,
    CONF_ENABLED,
    CONF_EPSILON,
    CONF_EXPERIMENT,
    CONF_FLOOR,
    CONF_FLOW,
    CONF_GRID,
    CONF_H_BOUND,
    CONF_INITIAL_DATA,
    CONF_INSIDE,
    CONF_KIND,
    CONF_KRYLOV_MAX_ITER,
    CONF_KRYLOV_TOL,
    CONF_LAMBDA,
    CONF_LINEAR_TOL,
    CONF_LX,
    CONF_LY,
    CONF_MEAN,
    CONF_MOBILITY_RULE,
    CONF_MODEL,
    CONF_NAME,
    CONF_NEWTON_MAX_ITER,
    CONF_NEWTON_TOL,
    CONF_NOISE,
    CONF_NUMERICS,
    CONF_NUTRIENT_CFL,
    CONF_NX,
    CONF_NY,
    CONF_OUTPUT,
    CONF_OUTSIDE,
    CONF_P,
    CONF_PATH,
    CONF_PENALTY_POWER,
    CONF_PHI0,
    CONF_PRESSURE_SIGN,
    CONF_Q0,
    CONF_Q_MONITOR,
    CONF_RADIUS,
    CONF_REGULARIZATION,
    CONF_RUN_NAME,
    CONF_SEED,
    CONF_SIGMA0,
    CONF_SIGMA_FLOOR,
    CONF_SNAPSHOT_EVERY,
    CONF_SOURCES,
    CONF_T_END,
    CONF_TIME,
    CONF_VALUE,
    CONF_WIDTH,
    DEFAULT_CSV_EVERY,
    DEFAULT_KRYLOV_MAX_ITER,
    DEFAULT_KRYLOV_TOL,
    DEFAULT_LINEAR_TOL,
    DEFAULT_NEWTON_MAX_ITER,
    DEFAULT_NEWTON_TOL,
    DEFAULT_NUTRIENT_CFL,
    DEFAULT_PENALTY_POWER,
    DEFAULT_Q_MONITOR,
    DEFAULT_RUN_NAME,
    DEFAULT_SIGMA_FLOOR,
    DEFAULT_SNAPSHOT_EVERY,
    FROM_FILE,
    PHI0_CONSTANT_MEAN,
    PHI0_TANH_BLOB,
    REGULARIZATION_EXACT,
    SIGMA0_BUMP,
    SIGMA0_CONSTANT,
)
from chb_simulator.constitutive import BUILTIN_SOURCES
from chb_simulator.data import AdvectionScheme, MobilityFaceRule

from .experiment import get_experiment_schema

_REAL = vol.Coerce(float)
_POSITIVE = vol.All(vol.Coerce(float), vol.Range(min=0, min_included=False))
_NONNEGATIVE = vol.All(vol.Coerce(float), vol.Range(min=0))
_POSITIVE_INT = vol.All(vol.Coerce(int), vol.Range(min=1))
_POINT = vol.All(vol.ExactSequence([_REAL, _REAL]), tuple)


def _grid_schema() -> vol.Schema:
    return vol.Schema(
        {
            vol.Required(CONF_NX): vol.All(vol.Coerce(int), vol.Range(min=2)),
            vol.Required(CONF_NY): vol.All(vol.Coerce(int), vol.Range(min=2)),
            vol.Optional(CONF_LX, default=1.0): _POSITIVE,
            vol.Optional(CONF_LY, default=1.0): _POSITIVE,
        }
    )


def _model_schema() -> vol.Schema:
    return vol.Schema(
        {
            vol.Required(CONF_CHI): _NONNEGATIVE,
            vol.Required(CONF_ELL): _POSITIVE,
            vol.Required(CONF_LAMBDA): _NONNEGATIVE,
            vol.Required(CONF_P): vol.All(vol.Coerce(float), vol.Range(min=1, max=2, min_included=False)),
            vol.Required(CONF_EPSILON): _NONNEGATIVE,
            vol.Required(CONF_Q0): vol.All(vol.Coerce(float), vol.Range(min=2, min_included=False)),
            vol.Optional(CONF_REGULARIZATION, default=REGULARIZATION_EXACT): vol.Any(REGULARIZATION_EXACT, _POSITIVE_INT),
            vol.Optional(CONF_PENALTY_POWER, default=DEFAULT_PENALTY_POWER): _NONNEGATIVE,
            vol.Optional(CONF_Q_MONITOR, default=DEFAULT_Q_MONITOR): _POSITIVE,
        }
    )


def _sources_schema() -> vol.Schema:
    return vol.Schema(
        {
            vol.Required(CONF_NAME): vol.In(BUILTIN_SOURCES),
            vol.Optional(CONF_H_BOUND): _NONNEGATIVE,
            vol.Optional(CONF_B0): _NONNEGATIVE,
            vol.Optional(CONF_B_INF): _NONNEGATIVE,
            vol.Optional(CONF_CAPACITY): _POSITIVE,
        }
    )


def _phi0_schema() -> vol.Any:
    return vol.Any(
        {
            vol.Required(CONF_KIND): PHI0_CONSTANT_MEAN,
            vol.Required(CONF_MEAN): _REAL,
            vol.Optional(CONF_NOISE, default=0.0): _NONNEGATIVE,
            vol.Optional(CONF_SEED, default=0): vol.All(vol.Coerce(int), vol.Range(min=0)),
        },
        {
            vol.Required(CONF_KIND): PHI0_TANH_BLOB,
            vol.Required(CONF_RADIUS): _POSITIVE,
            vol.Required(CONF_WIDTH): _POSITIVE,
            vol.Optional(CONF_CENTER): _POINT,
            vol.Optional(CONF_INSIDE, default=0.8): _REAL,
            vol.Optional(CONF_OUTSIDE, default=-0.8): _REAL,
        },
        {
            vol.Required(CONF_KIND): FROM_FILE,
            vol.Required(CONF_PATH): str,
        },
    )


def _sigma0_schema() -> vol.Any:
    return vol.Any(
        {
            vol.Required(CONF_KIND): SIGMA0_CONSTANT,
            vol.Required(CONF_VALUE): _REAL,
        },
        {
            vol.Required(CONF_KIND): SIGMA0_BUMP,
            vol.Required(CONF_FLOOR): _REAL,
            vol.Required(CONF_AMPLITUDE): _NONNEGATIVE,
            vol.Required(CONF_RADIUS): _POSITIVE,
            vol.Optional(CONF_CENTER): _POINT,
        },
        {
            vol.Required(CONF_KIND): FROM_FILE,
            vol.Required(CONF_PATH): str,
        },
    )


def _flow_schema() -> vol.Schema:
    return vol.Schema(
        {
            vol.Optional(CONF_ENABLED, default=True): bool,
            vol.Optional(CONF_KRYLOV_TOL, default=DEFAULT_KRYLOV_TOL): _POSITIVE,
            vol.Optional(CONF_KRYLOV_MAX_ITER, default=DEFAULT_KRYLOV_MAX_ITER): _POSITIVE_INT,
            vol.Optional(CONF_PRESSURE_SIGN, default=1.0): vol.All(vol.Coerce(float), vol.In([1.0, -1.0])),
        }
    )


def _numerics_schema() -> vol.Schema:
    return vol.Schema(
        {
            vol.Optional(CONF_NEWTON_TOL, default=DEFAULT_NEWTON_TOL): _POSITIVE,
            vol.Optional(CONF_NEWTON_MAX_ITER, default=DEFAULT_NEWTON_MAX_ITER): _POSITIVE_INT,
            vol.Optional(CONF_LINEAR_TOL, default=DEFAULT_LINEAR_TOL): _POSITIVE,
            vol.Optional(CONF_MOBILITY_RULE, default=MobilityFaceRule.UPWIND.value): vol.Coerce(MobilityFaceRule),
            vol.Optional(CONF_ADVECTION, default=AdvectionScheme.UPWIND.value): vol.Coerce(AdvectionScheme),
            vol.Optional(CONF_SIGMA_FLOOR, default=DEFAULT_SIGMA_FLOOR): _NONNEGATIVE,
            vol.Optional(CONF_NUTRIENT_CFL, default=DEFAULT_NUTRIENT_CFL): vol.All(
                vol.Coerce(float), vol.Range(min=0, max=1, min_included=False)
            ),
        }
    )


def _output_schema() -> vol.Schema:
    return vol.Schema(
        {
            vol.Optional(CONF_DIRECTORY): str,
            vol.Optional(CONF_SNAPSHOT_EVERY, default=DEFAULT_SNAPSHOT_EVERY): vol.All(
                vol.Coerce(int), vol.Range(min=0)
            ),
            vol.Optional(CONF_CSV_EVERY, default=DEFAULT_CSV_EVERY): _POSITIVE_INT,
            vol.Optional(CONF_BINARY_FIELDS, default=False): bool,
        }
    )


def get_config_schema() -> vol.Schema:
    """
    Get the schema of a complete run configuration.

    Returns:
        Voluptuous schema; validating a mapping returns it with defaults
        filled in and values coerced.

    """
    return vol.Schema(
        {
            vol.Optional(CONF_RUN_NAME, default=DEFAULT_RUN_NAME): str,
            vol.Required(CONF_GRID): _grid_schema(),
            vol.Required(CONF_MODEL): _model_schema(),
            vol.Required(CONF_SOURCES): _sources_schema(),
            vol.Required(CONF_INITIAL_DATA): {
                vol.Required(CONF_PHI0): _phi0_schema(),
                vol.Required(CONF_SIGMA0): _sigma0_schema(),
            },
            vol.Required(CONF_TIME): {
                vol.Required(CONF_DT): _POSITIVE,
                vol.Required(CONF_T_END): _POSITIVE,
            },
            vol.Optional(CONF_FLOW, default=dict): _flow_schema(),
            vol.Optional(CONF_NUMERICS, default=dict): _numerics_schema(),
            vol.Optional(CONF_OUTPUT, default=dict): _output_schema(),
            vol.Optional(CONF_EXPERIMENT, default=dict): get_experiment_schema(),
        }
    )


def validate_config_schema(raw: Any) -> dict[str, Any]:
    """Validate a loaded mapping; raises vol.Invalid on schema errors."""
    return get_config_schema()(raw)


__all__ = ["get_config_schema", "validate_config_schema"]
