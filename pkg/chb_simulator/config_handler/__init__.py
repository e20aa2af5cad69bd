"""
Run configuration handling for chb_simulator.

Package structure:
------------------
- loader.py: YAML loading, command-line overrides and the configuration echo
- schemas/: Voluptuous schemas of the run and experiment sections
- validators/: Assumption checks collected into a ValidationReport
- initial_data.py: Builders of phi0 and sigma0
- builder.py: build_sim_config and validate_config

Usage:
------
    raw = load_config_file(path)
    config, report = validate_config(raw, base_dir=path.parent)
"""

from __future__ import annotations

from .builder import build_model_params, build_sim_config, build_sources, validate_config
from .initial_data import build_phi0, build_sigma0
from .loader import apply_overrides, dump_config, load_config_file
from .validators import ValidationCheck, ValidationReport

__all__ = [
    "ValidationCheck",
    "ValidationReport",
    "apply_overrides",
    "build_model_params",
    "build_phi0",
    "build_sigma0",
    "build_sim_config",
    "build_sources",
    "dump_config",
    "load_config_file",
    "validate_config",
]
