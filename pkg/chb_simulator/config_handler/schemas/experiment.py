"""Schema of the optional experiment section."""

from __future__ import annotations

from itertools import pairwise

import voluptuous as vol

from chb_simulator.const import (
    CONF_AMPLITUDE,
    CONF_CHI,
    CONF_DARCY_SWEEP,
    CONF_DT_FACTOR,
    CONF_EPS_LIST,
    CONF_FLOW,
    CONF_MMS,
    CONF_N_LIST,
    CONF_N_SWEEP,
    CONF_P_LIST,
    CONF_P_SWEEP,
    CONF_RESOLUTIONS,
    CONF_T_END,
    REGULARIZATION_EXACT,
)

DEFAULT_MMS_RESOLUTIONS = (32, 64, 128)
DEFAULT_MMS_DT_FACTOR = 0.25
DEFAULT_MMS_T_END = 0.01


def _strictly_decreasing(values: list[float]) -> list[float]:
    if any(later >= earlier for earlier, later in pairwise(values)):
        msg = "must be strictly decreasing"
        raise vol.Invalid(msg)
    return values


def get_experiment_schema() -> vol.Schema:
    """
    Get the schema of the experiment section.

    Returns:
        Voluptuous schema with one optional subsection per experiment.

    """
    return vol.Schema(
        {
            vol.Optional(CONF_DARCY_SWEEP): {
                vol.Required(CONF_EPS_LIST): vol.All(
                    [vol.All(vol.Coerce(float), vol.Range(min=0))], vol.Length(min=1), _strictly_decreasing
                ),
            },
            vol.Optional(CONF_N_SWEEP): {
                vol.Required(CONF_N_LIST): vol.All(
                    [vol.Any(REGULARIZATION_EXACT, vol.All(vol.Coerce(int), vol.Range(min=1)))], vol.Length(min=1)
                ),
            },
            vol.Optional(CONF_P_SWEEP): {
                vol.Required(CONF_P_LIST): vol.All(
                    [vol.All(vol.Coerce(float), vol.Range(min=1, max=2, min_included=False))], vol.Length(min=1)
                ),
            },
            vol.Optional(CONF_MMS): {
                vol.Optional(CONF_RESOLUTIONS, default=list(DEFAULT_MMS_RESOLUTIONS)): vol.All(
                    [vol.All(vol.Coerce(int), vol.Range(min=4))], vol.Length(min=2)
                ),
                vol.Optional(CONF_DT_FACTOR, default=DEFAULT_MMS_DT_FACTOR): vol.All(
                    vol.Coerce(float), vol.Range(min=0, min_included=False)
                ),
                vol.Optional(CONF_T_END, default=DEFAULT_MMS_T_END): vol.All(
                    vol.Coerce(float), vol.Range(min=0, min_included=False)
                ),
                vol.Optional(CONF_CHI, default=0.0): vol.All(vol.Coerce(float), vol.Range(min=0)),
                vol.Optional(CONF_FLOW, default=False): bool,
                vol.Optional(CONF_AMPLITUDE, default=1.0): vol.All(vol.Coerce(float), vol.Range(min=0, max=3)),
            },
        }
    )


__all__ = ["DEFAULT_MMS_DT_FACTOR", "DEFAULT_MMS_RESOLUTIONS", "DEFAULT_MMS_T_END", "get_experiment_schema"]
