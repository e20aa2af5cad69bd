"""YAML loading and command-line overrides of run configurations."""

from __future__ import annotations

import copy
from pathlib import Path
from typing import Any

import yaml

from chb_simulator.const import (
    CONF_BINARY_FIELDS,
    CONF_DIRECTORY,
    CONF_INITIAL_DATA,
    CONF_KIND,
    CONF_OUTPUT,
    CONF_PHI0,
    CONF_SEED,
    CONF_SNAPSHOT_EVERY,
    LOGGER,
    PHI0_CONSTANT_MEAN,
)
from chb_simulator.exceptions import ChbConfigurationError


def load_config_file(path: Path) -> dict[str, Any]:
    """
    Read a YAML run configuration.

    Raises:
        ChbConfigurationError: If the file is missing, not YAML or not a mapping.

    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        msg = f"Cannot read configuration {path}: {err}"
        raise ChbConfigurationError(msg) from err
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as err:
        msg = f"{path} is not valid YAML: {err}"
        raise ChbConfigurationError(msg) from err
    if not isinstance(raw, dict):
        msg = f"{path} must hold a mapping of sections, got {type(raw).__name__}"
        raise ChbConfigurationError(msg)
    LOGGER.debug("Loaded configuration %s with sections %s", path, ", ".join(map(str, raw)))
    return raw


def apply_overrides(
    raw: dict[str, Any],
    *,
    seed: int | None = None,
    out: Path | None = None,
    snapshot_every: int | None = None,
    binary_fields: bool | None = None,
) -> dict[str, Any]:
    """
    Return a copy of a loaded configuration with command-line values applied.

    The seed only reaches a constant_mean phase field; other initial data
    are deterministic already.

    Example:
        >>> apply_overrides({"output": {}}, snapshot_every=5)["output"]
        {'snapshot_every': 5}

    """
    data = copy.deepcopy(raw)
    if any(value is not None for value in (out, snapshot_every, binary_fields)):
        output = data.setdefault(CONF_OUTPUT, {})
        if out is not None:
            output[CONF_DIRECTORY] = str(out)
        if snapshot_every is not None:
            output[CONF_SNAPSHOT_EVERY] = snapshot_every
        if binary_fields is not None:
            output[CONF_BINARY_FIELDS] = binary_fields
    if seed is not None:
        phi0 = data.get(CONF_INITIAL_DATA, {}).get(CONF_PHI0)
        if isinstance(phi0, dict) and phi0.get(CONF_KIND) == PHI0_CONSTANT_MEAN:
            phi0[CONF_SEED] = seed
    return data


def dump_config(data: dict[str, Any], path: Path) -> Path:
    """Write the configuration echo of a run."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(yaml.safe_dump(_plain(data), sort_keys=False), encoding="utf-8")
    return path


def _plain(value: Any) -> Any:
    """Reduce enums, tuples and paths to YAML-safe builtins."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, str):
        return str(value)
    if isinstance(value, Path):
        return str(value)
    return value


__all__ = ["apply_overrides", "dump_config", "load_config_file"]
