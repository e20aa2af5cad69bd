"""Capillary forcing of the flow."""

from __future__ import annotations

from chb_simulator.grid import FaceField, ScalarField, check_same_grid, face_average, face_product, gradient


def korteweg_force(phi: ScalarField, mu: ScalarField, sigma: ScalarField, chi: float) -> FaceField:
    """
    Face force mu grad phi - chi phi grad sigma.

    Scalars are averaged arithmetically to the faces. With mu = phi the first
    term is exactly the discrete gradient of phi**2 / 2. Boundary-normal
    components vanish because the face gradients do.
    """
    check_same_grid(phi.grid, mu.grid)
    check_same_grid(phi.grid, sigma.grid)
    capillary = face_product(face_average(mu), gradient(phi))
    chemotactic = face_product(face_average(phi), gradient(sigma))
    return capillary - chemotactic.scaled(chi)
