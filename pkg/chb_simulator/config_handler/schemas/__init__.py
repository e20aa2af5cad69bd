"""
Voluptuous schemas of the simulation configuration.

Package structure:
-----------------
- config.py: run sections (grid, model, sources, initial_data, time, flow, numerics, output)
- experiment.py: the optional experiment section

All schemas are re-exported from this __init__.py for convenient imports.
"""

from __future__ import annotations

from chb_simulator.config_handler.schemas.config import get_config_schema, validate_config_schema
from chb_simulator.config_handler.schemas.experiment import get_experiment_schema

__all__ = [
    "get_config_schema",
    "get_experiment_schema",
    "validate_config_schema",
]
