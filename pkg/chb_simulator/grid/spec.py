"""
Grid description and field containers.

Scalars live at cell centres as arrays of shape (nx, ny), indexed [i, j] with
i along x. Vector components live on a MAC staggering: x-components on the
(nx + 1, ny) vertical faces and y-components on the (nx, ny + 1) horizontal
faces. Face index i of an x-component sits at x = i * hx.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray

from chb_simulator.exceptions import ChbConfigurationError, ChbInvariantError

MIN_CELLS = 4


@dataclass(frozen=True)
class GridSpec:
    """Uniform rectangular grid on [0, lx] x [0, ly]."""

    nx: int
    ny: int
    lx: float = 1.0
    ly: float = 1.0

    def __post_init__(self) -> None:
        """Validate cell counts and side lengths."""
        if self.nx < MIN_CELLS or self.ny < MIN_CELLS:
            msg = f"Grid needs at least {MIN_CELLS} cells per direction, got {self.nx}x{self.ny}"
            raise ChbConfigurationError(msg)
        if not (self.lx > 0 and self.ly > 0 and np.isfinite(self.lx) and np.isfinite(self.ly)):
            msg = f"Domain side lengths must be positive and finite, got lx={self.lx}, ly={self.ly}"
            raise ChbConfigurationError(msg)

    @property
    def hx(self) -> float:
        """Cell width."""
        return self.lx / self.nx

    @property
    def hy(self) -> float:
        """Cell height."""
        return self.ly / self.ny

    @property
    def cell_volume(self) -> float:
        """Area of one cell, the quadrature weight."""
        return self.hx * self.hy

    @property
    def area(self) -> float:
        """Domain area |Omega|."""
        return self.lx * self.ly

    @property
    def shape(self) -> tuple[int, int]:
        """Shape of a cell-centred array."""
        return (self.nx, self.ny)

    @property
    def size(self) -> int:
        """Number of cells."""
        return self.nx * self.ny

    @property
    def x_face_shape(self) -> tuple[int, int]:
        """Shape of the x-component array."""
        return (self.nx + 1, self.ny)

    @property
    def y_face_shape(self) -> tuple[int, int]:
        """Shape of the y-component array."""
        return (self.nx, self.ny + 1)

    def cell_centers(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Return the (x, y) coordinates of cell centres, each of shape (nx, ny)."""
        x = (np.arange(self.nx) + 0.5) * self.hx
        y = (np.arange(self.ny) + 0.5) * self.hy
        return np.meshgrid(x, y, indexing="ij")

    def x_face_centers(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Return coordinates of vertical face midpoints, each of shape (nx + 1, ny)."""
        x = np.arange(self.nx + 1) * self.hx
        y = (np.arange(self.ny) + 0.5) * self.hy
        return np.meshgrid(x, y, indexing="ij")

    def y_face_centers(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Return coordinates of horizontal face midpoints, each of shape (nx, ny + 1)."""
        x = (np.arange(self.nx) + 0.5) * self.hx
        y = np.arange(self.ny + 1) * self.hy
        return np.meshgrid(x, y, indexing="ij")

    def nodes(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Return coordinates of cell corners, each of shape (nx + 1, ny + 1)."""
        x = np.arange(self.nx + 1) * self.hx
        y = np.arange(self.ny + 1) * self.hy
        return np.meshgrid(x, y, indexing="ij")


def _frozen_array(values: ArrayLike, shape: tuple[int, int], what: str) -> NDArray[np.float64]:
    array = np.array(values, dtype=np.float64)
    if array.shape != shape:
        msg = f"{what} has shape {array.shape}, expected {shape}"
        raise ChbConfigurationError(msg)
    if not np.all(np.isfinite(array)):
        msg = f"{what} contains non-finite values"
        raise ChbInvariantError(msg)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Cell-centred real values on a grid. Values are copied and frozen on construction."""

    grid: GridSpec
    values: NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        """Copy, check and freeze the values."""
        object.__setattr__(self, "values", _frozen_array(self.values, self.grid.shape, "ScalarField"))

    @classmethod
    def constant(cls, grid: GridSpec, value: float) -> ScalarField:
        """Spatially uniform field."""
        return cls(grid, np.full(grid.shape, float(value)))

    @classmethod
    def zeros(cls, grid: GridSpec) -> ScalarField:
        """All-zero field."""
        return cls(grid, np.zeros(grid.shape))

    @classmethod
    def from_function(cls, grid: GridSpec, func: Callable[..., ArrayLike]) -> ScalarField:
        """Sample func(x, y) at cell centres."""
        x, y = grid.cell_centers()
        return cls(grid, np.broadcast_to(func(x, y), grid.shape))

    @cached_property
    def flat(self) -> NDArray[np.float64]:
        """Row-major (x slowest) view used by the sparse operators."""
        return self.values.ravel()

    @classmethod
    def from_flat(cls, grid: GridSpec, vector: ArrayLike) -> ScalarField:
        """Inverse of flat."""
        return cls(grid, np.asarray(vector, dtype=np.float64).reshape(grid.shape))

    def max_abs(self) -> float:
        """Sup norm."""
        return float(np.max(np.abs(self.values)))

    def min(self) -> float:
        """Smallest cell value."""
        return float(np.min(self.values))

    def __add__(self, other: ScalarField) -> ScalarField:
        """Cellwise sum."""
        check_same_grid(self.grid, other.grid)
        return ScalarField(self.grid, self.values + other.values)

    def __sub__(self, other: ScalarField) -> ScalarField:
        """Cellwise difference."""
        check_same_grid(self.grid, other.grid)
        return ScalarField(self.grid, self.values - other.values)

    def scaled(self, factor: float) -> ScalarField:
        """Multiply by a scalar."""
        return ScalarField(self.grid, factor * self.values)


@dataclass(frozen=True, eq=False)
class FaceField:
    """MAC-staggered vector field: x on vertical faces, y on horizontal faces."""

    grid: GridSpec
    x: NDArray[np.float64] = field(repr=False)
    y: NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        """Copy, check and freeze both components."""
        object.__setattr__(self, "x", _frozen_array(self.x, self.grid.x_face_shape, "FaceField.x"))
        object.__setattr__(self, "y", _frozen_array(self.y, self.grid.y_face_shape, "FaceField.y"))

    @classmethod
    def zeros(cls, grid: GridSpec) -> FaceField:
        """All-zero face field."""
        return cls(grid, np.zeros(grid.x_face_shape), np.zeros(grid.y_face_shape))

    @classmethod
    def from_flat(cls, grid: GridSpec, vector: ArrayLike) -> FaceField:
        """Split a stacked (x then y) vector into components."""
        vector = np.asarray(vector, dtype=np.float64)
        split = (grid.nx + 1) * grid.ny
        return cls(
            grid,
            vector[:split].reshape(grid.x_face_shape),
            vector[split:].reshape(grid.y_face_shape),
        )

    @classmethod
    def from_functions(cls, grid: GridSpec, fx: Callable[..., ArrayLike], fy: Callable[..., ArrayLike]) -> FaceField:
        """Sample fx on vertical and fy on horizontal face midpoints."""
        xx, xy = grid.x_face_centers()
        yx, yy = grid.y_face_centers()
        return cls(
            grid,
            np.broadcast_to(fx(xx, xy), grid.x_face_shape),
            np.broadcast_to(fy(yx, yy), grid.y_face_shape),
        )

    @cached_property
    def flat(self) -> NDArray[np.float64]:
        """X components followed by y components, each row-major."""
        return np.concatenate([self.x.ravel(), self.y.ravel()])

    def with_zero_normal(self) -> FaceField:
        """Return a copy whose boundary-normal components are exactly zero."""
        x = self.x.copy()
        y = self.y.copy()
        x[0, :] = 0.0
        x[-1, :] = 0.0
        y[:, 0] = 0.0
        y[:, -1] = 0.0
        return FaceField(self.grid, x, y)

    def boundary_normal_max(self) -> float:
        """Largest absolute normal component on the domain boundary."""
        return float(
            max(
                np.max(np.abs(self.x[[0, -1], :])),
                np.max(np.abs(self.y[:, [0, -1]])),
            )
        )

    def max_abs(self) -> float:
        """Largest absolute component."""
        return float(max(np.max(np.abs(self.x)), np.max(np.abs(self.y))))

    def __add__(self, other: FaceField) -> FaceField:
        """Componentwise sum."""
        check_same_grid(self.grid, other.grid)
        return FaceField(self.grid, self.x + other.x, self.y + other.y)

    def __sub__(self, other: FaceField) -> FaceField:
        """Componentwise difference."""
        check_same_grid(self.grid, other.grid)
        return FaceField(self.grid, self.x - other.x, self.y - other.y)

    def scaled(self, factor: float) -> FaceField:
        """Multiply by a scalar."""
        return FaceField(self.grid, factor * self.x, factor * self.y)


def check_same_grid(first: GridSpec, second: GridSpec) -> None:
    """Raise ChbConfigurationError unless both grids are equal."""
    if first != second:
        msg = f"Fields live on different grids: {first} vs {second}"
        raise ChbConfigurationError(msg)


