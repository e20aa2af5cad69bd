"""Builders of the initial phase field and nutrient from validated sections."""

from __future__ import annotations

from collections.abc import Mapping
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import NDArray

from chb_simulator.const import (
    CONF_AMPLITUDE,
    CONF_CENTER,
    CONF_FLOOR,
    CONF_INSIDE,
    CONF_KIND,
    CONF_MEAN,
    CONF_NOISE,
    CONF_OUTSIDE,
    CONF_PATH,
    CONF_RADIUS,
    CONF_SEED,
    CONF_VALUE,
    CONF_WIDTH,
    FROM_FILE,
    LOGGER,
    PHI0_CONSTANT_MEAN,
    PHI0_TANH_BLOB,
    SIGMA0_BUMP,
    SIGMA0_CONSTANT,
)
from chb_simulator.exceptions import ChbConfigurationError
from chb_simulator.grid import GridSpec, ScalarField, read_field


def _center(grid: GridSpec, section: Mapping[str, Any]) -> tuple[float, float]:
    if CONF_CENTER in section:
        cx, cy = section[CONF_CENTER]
        return float(cx), float(cy)
    return 0.5 * grid.lx, 0.5 * grid.ly


def _radius_sq(grid: GridSpec, section: Mapping[str, Any]) -> NDArray[np.float64]:
    cx, cy = _center(grid, section)
    x, y = grid.cell_centers()
    return (x - cx) ** 2 + (y - cy) ** 2


def _from_file(grid: GridSpec, section: Mapping[str, Any], base_dir: Path | None) -> ScalarField:
    path = Path(section[CONF_PATH])
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    snapshot = read_field(path)
    if snapshot.field.grid != grid:
        msg = f"{path} holds a {snapshot.field.grid.nx}x{snapshot.field.grid.ny} field, grid is {grid.nx}x{grid.ny}"
        raise ChbConfigurationError(msg)
    LOGGER.debug("Initial field %s read from %s (t=%s)", snapshot.name, path, snapshot.time)
    return snapshot.field


def build_phi0(grid: GridSpec, section: Mapping[str, Any], base_dir: Path | None = None) -> ScalarField:
    """
    Initial phase field.

    constant_mean adds seeded uniform noise with its own mean removed, so the
    mean of the result is exactly the configured one. tanh_blob is a disc of
    value `inside` with a tanh transition of the given width to `outside`.

    Raises:
        ChbConfigurationError: For an unknown kind or a from_file grid mismatch.

    """
    kind = section[CONF_KIND]
    if kind == PHI0_CONSTANT_MEAN:
        values = np.full(grid.shape, float(section[CONF_MEAN]))
        noise = float(section.get(CONF_NOISE, 0.0))
        if noise > 0:
            rng = np.random.default_rng(int(section.get(CONF_SEED, 0)))
            perturbation = rng.uniform(-1.0, 1.0, grid.shape)
            values += noise * (perturbation - perturbation.mean())
        return ScalarField(grid, values)
    if kind == PHI0_TANH_BLOB:
        r = np.sqrt(_radius_sq(grid, section))
        inside, outside = float(section[CONF_INSIDE]), float(section[CONF_OUTSIDE])
        profile = 0.5 * (1.0 - np.tanh((r - float(section[CONF_RADIUS])) / float(section[CONF_WIDTH])))
        return ScalarField(grid, outside + (inside - outside) * profile)
    if kind == FROM_FILE:
        return _from_file(grid, section, base_dir)
    msg = f"Unknown phi0 kind {kind!r}"
    raise ChbConfigurationError(msg)


def build_sigma0(grid: GridSpec, section: Mapping[str, Any], base_dir: Path | None = None) -> ScalarField:
    """Initial nutrient: constant, floor plus a parabolic bump, or read from file."""
    kind = section[CONF_KIND]
    if kind == SIGMA0_CONSTANT:
        return ScalarField.constant(grid, float(section[CONF_VALUE]))
    if kind == SIGMA0_BUMP:
        bump = np.maximum(0.0, 1.0 - _radius_sq(grid, section) / float(section[CONF_RADIUS]) ** 2)
        return ScalarField(grid, float(section[CONF_FLOOR]) + float(section[CONF_AMPLITUDE]) * bump)
    if kind == FROM_FILE:
        return _from_file(grid, section, base_dir)
    msg = f"Unknown sigma0 kind {kind!r}"
    raise ChbConfigurationError(msg)


__all__ = ["build_phi0", "build_sigma0"]
