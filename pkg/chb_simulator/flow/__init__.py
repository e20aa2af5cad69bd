"""
Brinkman and Darcy flow driven by the Korteweg force.

Package structure:
- params.py: FlowSolveParams
- korteweg.py: korteweg_force
- darcy.py: darcy_solve (pressure Poisson equation, matrix-free CG)
- brinkman.py: brinkman_solve (MAC Schur complement CG), strain norms and solve_flow
- stream.py: divergence-free velocities from a stream function
"""

from __future__ import annotations

from .brinkman import brinkman_solve, solve_flow, strain_matrix, strain_norm_sq
from .darcy import check_compatible, darcy_solve
from .korteweg import korteweg_force
from .params import FlowSolveParams
from .stream import velocity_from_stream_function

__all__ = [
    "FlowSolveParams",
    "brinkman_solve",
    "check_compatible",
    "darcy_solve",
    "korteweg_force",
    "solve_flow",
    "strain_matrix",
    "strain_norm_sq",
    "velocity_from_stream_function",
]
