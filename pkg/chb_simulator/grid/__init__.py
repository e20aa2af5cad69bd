"""
Discrete calculus on a uniform rectangular MAC grid.

Package structure:
- spec.py: GridSpec, ScalarField (cell centres) and FaceField (staggered faces)
- operators.py: gradient, divergence, Neumann Laplacian and bilaplacian,
  quadrature and face interpolation helpers
- assembly.py: cached sparse matrices of the same operators for implicit solves
- snapshot.py: CHB-FIELD v1 snapshot reader and writer

The discrete divergence is the negative adjoint of the gradient under the
midpoint inner products, and laplacian_neumann is literally
divergence(gradient(f)); the rest of the simulator relies on both facts.
"""

from __future__ import annotations

from .assembly import bilaplacian_matrix, divergence_matrix, gradient_matrix, laplacian_matrix
from .operators import (
    bilaplacian_neumann,
    divergence,
    face_average,
    face_inner_product,
    face_norm_sq,
    face_product,
    gradient,
    inner_product,
    integral,
    laplacian_neumann,
    mean,
    norm_sq,
    upwind_values,
)
from .snapshot import Snapshot, read_field, write_field
from .spec import FaceField, GridSpec, ScalarField, check_same_grid

__all__ = [
    "FaceField",
    "GridSpec",
    "ScalarField",
    "Snapshot",
    "bilaplacian_matrix",
    "bilaplacian_neumann",
    "check_same_grid",
    "divergence",
    "divergence_matrix",
    "face_average",
    "face_inner_product",
    "face_norm_sq",
    "face_product",
    "gradient",
    "gradient_matrix",
    "inner_product",
    "integral",
    "laplacian_matrix",
    "laplacian_neumann",
    "mean",
    "norm_sq",
    "read_field",
    "upwind_values",
    "write_field",
]
