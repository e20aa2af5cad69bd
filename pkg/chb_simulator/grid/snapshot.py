"""
Field snapshot files.

Format: one ASCII header line

    CHB-FIELD v1 nx ny lx ly name time

followed either by nx rows of ny ASCII floats (row i holds the cells with
x-index i) or by nx * ny little-endian float64 values in the same order.
Header floats are written with repr so that the binary payload together with
the header reconstructs the field bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from chb_simulator.const import LOGGER, SNAPSHOT_MAGIC, SNAPSHOT_VERSION
from chb_simulator.exceptions import ChbConfigurationError

from .spec import GridSpec, ScalarField

_HEADER_FIELDS = 8
_FLOAT_BYTES = 8


@dataclass(frozen=True)
class Snapshot:
    """A field read back from disk together with its header metadata."""

    field: ScalarField
    name: str
    time: float


def write_field(path: Path, field: ScalarField, name: str, time: float, *, binary: bool = False) -> Path:
    """
    Write a scalar field snapshot.

    Args:
        path: Destination file.
        field: The field to store.
        name: Field label; must not contain whitespace.
        time: Simulation time stamp.
        binary: Write little-endian float64 instead of ASCII rows.

    Returns:
        The path written.

    Raises:
        ChbConfigurationError: If name contains whitespace.

    """
    if not name or any(ch.isspace() for ch in name):
        msg = f"Snapshot name must be a non-empty token without whitespace, got {name!r}"
        raise ChbConfigurationError(msg)

    grid = field.grid
    header = (
        f"{SNAPSHOT_MAGIC} {SNAPSHOT_VERSION} {grid.nx} {grid.ny} {grid.lx!r} {grid.ly!r} {name} {float(time)!r}\n"
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as handle:
        handle.write(header.encode("ascii"))
        if binary:
            handle.write(field.values.astype("<f8").tobytes(order="C"))
        else:
            rows = "\n".join(" ".join(repr(float(v)) for v in row) for row in field.values)
            handle.write((rows + "\n").encode("ascii"))
    LOGGER.debug("Wrote %s snapshot %s (binary=%s)", name, path, binary)
    return path


def _parse_header(line: str, path: Path) -> tuple[GridSpec, str, float]:
    parts = line.split()
    if len(parts) != _HEADER_FIELDS or parts[0] != SNAPSHOT_MAGIC:
        msg = f"{path} is not a field snapshot (header {line!r})"
        raise ChbConfigurationError(msg)
    if parts[1] != SNAPSHOT_VERSION:
        msg = f"{path} has unsupported snapshot version {parts[1]}"
        raise ChbConfigurationError(msg)
    try:
        grid = GridSpec(int(parts[2]), int(parts[3]), float(parts[4]), float(parts[5]))
        time = float(parts[7])
    except ValueError as err:
        msg = f"{path} has a malformed header: {line!r}"
        raise ChbConfigurationError(msg) from err
    return grid, parts[6], time


def read_field(path: Path, *, binary: bool | None = None) -> Snapshot:
    """
    Read a snapshot written by write_field.

    Args:
        path: Snapshot file.
        binary: Force the payload interpretation. When None the payload is
            taken as binary exactly when its size is nx * ny * 8 bytes.

    Returns:
        The field with its name and time.

    Raises:
        ChbConfigurationError: If the file is not a valid snapshot.

    """
    raw = Path(path).read_bytes()
    newline = raw.find(b"\n")
    if newline < 0:
        msg = f"{path} has no header line"
        raise ChbConfigurationError(msg)
    grid, name, time = _parse_header(raw[:newline].decode("ascii", errors="replace"), path)
    payload = raw[newline + 1 :]

    if binary is None:
        binary = len(payload) == grid.size * _FLOAT_BYTES

    if binary:
        if len(payload) != grid.size * _FLOAT_BYTES:
            msg = f"{path} binary payload has {len(payload)} bytes, expected {grid.size * _FLOAT_BYTES}"
            raise ChbConfigurationError(msg)
        values = np.frombuffer(payload, dtype="<f8").reshape(grid.shape)
    else:
        try:
            values = np.array(payload.decode("ascii").split(), dtype=np.float64)
        except (UnicodeDecodeError, ValueError) as err:
            msg = f"{path} ASCII payload is not a list of floats"
            raise ChbConfigurationError(msg) from err
        if values.size != grid.size:
            msg = f"{path} holds {values.size} values, expected {grid.size}"
            raise ChbConfigurationError(msg)
        values = values.reshape(grid.shape)

    return Snapshot(ScalarField(grid, values), name, time)


__all__ = ["Snapshot", "read_field", "write_field"]
