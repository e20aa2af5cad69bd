"""Divergence-free MAC velocities from a nodal stream function."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike

from chb_simulator.grid import FaceField, GridSpec


def velocity_from_stream_function(grid: GridSpec, psi: Callable[..., ArrayLike]) -> FaceField:
    """
    Discrete curl (d_y psi, -d_x psi) of a stream function sampled at the nodes.

    The result is divergence free to roundoff. Its normal component vanishes
    on the walls, where it is set to zero exactly; psi should be constant along them.
    """
    x, y = grid.nodes()
    nodal = np.broadcast_to(np.asarray(psi(x, y), dtype=np.float64), x.shape)
    ux = np.diff(nodal, axis=1) / grid.hy
    uy = -np.diff(nodal, axis=0) / grid.hx
    return FaceField(grid, ux, uy).with_zero_normal()


__all__ = ["velocity_from_stream_function"]
