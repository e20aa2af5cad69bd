"""
Manufactured-solution convergence study.

The manufactured fields are

    phi*   = 0.3 a e^-t cos(kx x) cos(ky y)
    sigma* = 1 + 0.5 a e^-t cos(kx x) cos(ky y)
    psi*   = 0.05 a e^-t sin(kx x) sin(ky y),   u* = (d_y psi*, -d_x psi*)
    pi*    = 0.1 a e^-t cos(kx x) cos(ky y)

with kx = pi / lx, ky = pi / ly and amplitude a. They satisfy the no-flux,
free-slip and zero-normal-velocity boundary conditions, so only the
right-hand sides change. sympy derives the residuals of the phase, nutrient
and flow equations; the configured sources h and b are subtracted
numerically, so any source pair can be used. The exact potential is
required because the residual uses beta(r) = 2 artanh(r).
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, replace
from functools import cache, partial
import math
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import NDArray
import sympy

from chb_simulator.config_handler.schemas.experiment import (
    DEFAULT_MMS_DT_FACTOR,
    DEFAULT_MMS_RESOLUTIONS,
    DEFAULT_MMS_T_END,
)
from chb_simulator.const import (
    CONF_AMPLITUDE,
    CONF_CHI,
    CONF_DT_FACTOR,
    CONF_FLOW,
    CONF_RESOLUTIONS,
    CONF_T_END,
    LOGGER,
)
from chb_simulator.data import AdvectionScheme, ManufacturedForcing, MobilityFaceRule, SimConfig
from chb_simulator.exceptions import ChbConfigurationError
from chb_simulator.grid import FaceField, GridSpec, ScalarField, face_norm_sq, norm_sq

from .runner import MemberResult, MemberSpec, member_output, run_members
from .tables import SweepTable, observed_orders

MMS_COLUMNS = (
    "n",
    "h",
    "dt",
    "steps",
    "err_phi",
    "order_phi",
    "err_sigma",
    "order_sigma",
    "err_u",
    "order_u",
)
MIN_SCALAR_ORDER = 1.8
# Errors below this are treated as exact and carry no order.
ZERO_ERROR = 1e-13

_FieldFunction = Callable[[Any, Any, float], Any]


@dataclass(frozen=True)
class ManufacturedSolution:
    """
    Constants fixing the manufactured fields and the equations they solve.

    Attributes:
        amplitude: Common factor a; 0 gives phi* = 0, sigma* = 1, u* = 0.
        lx: Domain width.
        ly: Domain height.
        chi: Chemotactic coefficient.
        ell: Linear sink of the phase equation.
        lam: Concavity of the potential.
        p: Sensitivity exponent.
        epsilon: Brinkman viscosity.
        pressure_sign: Sign s of the pressure gradient.
        flow: Whether the velocity is manufactured (u* = 0 otherwise).

    """

    amplitude: float
    lx: float
    ly: float
    chi: float
    ell: float
    lam: float
    p: float
    epsilon: float
    pressure_sign: float
    flow: bool


@dataclass(frozen=True)
class _Compiled:
    phi: _FieldFunction
    sigma: _FieldFunction
    ux: _FieldFunction
    uy: _FieldFunction
    phase_residual: _FieldFunction
    nutrient_residual: _FieldFunction
    force_x: _FieldFunction
    force_y: _FieldFunction


@cache
def _compile(solution: ManufacturedSolution) -> _Compiled:
    """Symbolic residuals of the manufactured fields, lambdified for numpy."""
    x, y, t = sympy.symbols("x y t", real=True)
    a = sympy.Float(solution.amplitude)
    kx, ky = sympy.pi / sympy.Float(solution.lx), sympy.pi / sympy.Float(solution.ly)
    chi, ell, lam = (sympy.Float(v) for v in (solution.chi, solution.ell, solution.lam))
    p, eps, sign = sympy.Float(solution.p), sympy.Float(solution.epsilon), sympy.Float(solution.pressure_sign)
    decay = sympy.exp(-t)
    cc = sympy.cos(kx * x) * sympy.cos(ky * y)

    def lap(expr: sympy.Expr) -> sympy.Expr:
        return sympy.diff(expr, x, 2) + sympy.diff(expr, y, 2)

    phi = sympy.Rational(3, 10) * a * decay * cc
    sigma = 1 + sympy.Rational(1, 2) * a * decay * cc
    if solution.flow:
        psi = sympy.Rational(1, 20) * a * decay * sympy.sin(kx * x) * sympy.sin(ky * y)
        pressure = sympy.Rational(1, 10) * a * decay * cc
    else:
        psi = sympy.Integer(0)
        pressure = sympy.Integer(0)
    ux, uy = sympy.diff(psi, y), -sympy.diff(psi, x)

    mu = -lap(phi) + 2 * sympy.atanh(phi) - lam * phi - chi * sigma
    alpha = sigma / (1 + sigma ** (p - 1))
    phase = (
        sympy.diff(phi, t)
        + sympy.diff(phi * ux, x)
        + sympy.diff(phi * uy, y)
        - lap(mu)
        + ell * phi
    )
    nutrient = (
        sympy.diff(sigma, t)
        + sympy.diff(sigma * ux, x)
        + sympy.diff(sigma * uy, y)
        - lap(sigma)
        + chi * (sympy.diff(alpha * sympy.diff(phi, x), x) + sympy.diff(alpha * sympy.diff(phi, y), y))
    )
    # The viscous operator is -eps div(Du) = -(eps / 2) lap(u) on divergence-free fields.
    force_x = -eps / 2 * lap(ux) + ux - sign * sympy.diff(pressure, x) - (mu * sympy.diff(phi, x) - chi * phi * sympy.diff(sigma, x))
    force_y = -eps / 2 * lap(uy) + uy - sign * sympy.diff(pressure, y) - (mu * sympy.diff(phi, y) - chi * phi * sympy.diff(sigma, y))

    def compile_field(expr: sympy.Expr) -> _FieldFunction:
        return sympy.lambdify((x, y, t), expr, modules="numpy")

    return _Compiled(
        phi=compile_field(phi),
        sigma=compile_field(sigma),
        ux=compile_field(ux),
        uy=compile_field(uy),
        phase_residual=compile_field(phase),
        nutrient_residual=compile_field(nutrient),
        force_x=compile_field(force_x),
        force_y=compile_field(force_y),
    )


def _sample(func: _FieldFunction, x: NDArray[np.float64], y: NDArray[np.float64], t: float) -> NDArray[np.float64]:
    return np.broadcast_to(np.asarray(func(x, y, t), dtype=np.float64), x.shape).copy()


def _cells(grid: GridSpec, func: _FieldFunction, t: float) -> ScalarField:
    x, y = grid.cell_centers()
    return ScalarField(grid, _sample(func, x, y, t))


def _faces(grid: GridSpec, fx: _FieldFunction, fy: _FieldFunction, t: float) -> FaceField:
    xx, xy = grid.x_face_centers()
    yx, yy = grid.y_face_centers()
    return FaceField(grid, _sample(fx, xx, xy, t), _sample(fy, yx, yy, t)).with_zero_normal()


def exact_fields(solution: ManufacturedSolution, grid: GridSpec, t: float) -> tuple[ScalarField, ScalarField, FaceField]:
    """Manufactured phi, sigma and u sampled on the grid at time t."""
    compiled = _compile(solution)
    return _cells(grid, compiled.phi, t), _cells(grid, compiled.sigma, t), _faces(grid, compiled.ux, compiled.uy, t)


def manufactured_forcing(solution: ManufacturedSolution, config: SimConfig) -> ManufacturedForcing:
    """Extra right-hand sides that make the manufactured fields an exact solution."""
    compiled = _compile(solution)
    grid, src = config.grid, config.sources

    def phase(t: float) -> ScalarField:
        phi, sigma = _cells(grid, compiled.phi, t), _cells(grid, compiled.sigma, t)
        h = np.broadcast_to(src.h(sigma.values, phi.values), grid.shape)
        return ScalarField(grid, _cells(grid, compiled.phase_residual, t).values - h)

    def nutrient(t: float) -> ScalarField:
        phi, sigma = _cells(grid, compiled.phi, t), _cells(grid, compiled.sigma, t)
        b = np.broadcast_to(src.b(sigma.values, phi.values), grid.shape)
        return ScalarField(grid, _cells(grid, compiled.nutrient_residual, t).values - b)

    def force(t: float) -> FaceField:
        return _faces(grid, compiled.force_x, compiled.force_y, t)

    return ManufacturedForcing(phase=phase, nutrient=nutrient, force=force)


def mms_config(base: SimConfig, solution: ManufacturedSolution, resolution: int, dt_factor: float, t_end: float) -> SimConfig:
    """Base configuration on an n x n grid with dt = dt_factor h**2 and manufactured initial data."""
    grid = GridSpec(resolution, resolution, base.grid.lx, base.grid.ly)
    h = min(grid.hx, grid.hy)
    phi0, sigma0, _ = exact_fields(solution, grid, 0.0)
    model = base.model.with_changes(chi=solution.chi)
    return replace(
        base,
        grid=grid,
        model=model,
        phi0=phi0,
        sigma0=sigma0,
        dt=dt_factor * h * h,
        t_end=t_end,
        flow_enabled=solution.flow,
        flow=replace(base.flow, epsilon=model.epsilon),
        numerics=replace(
            base.numerics, advection=AdvectionScheme.CENTRAL, mobility_face_rule=MobilityFaceRule.HARMONIC
        ),
    )


def _errors(solution: ManufacturedSolution, member: MemberResult) -> tuple[float, float, float]:
    state = member.final_state
    if state is None:
        return math.nan, math.nan, math.nan
    phi, sigma, u = exact_fields(solution, state.grid, state.t)
    return (
        math.sqrt(norm_sq(state.phi - phi)),
        math.sqrt(norm_sq(state.sigma - sigma)),
        math.sqrt(face_norm_sq(state.u - u)),
    )


def experiment_mms(
    config: SimConfig,
    settings: dict[str, Any] | None = None,
    output_dir: Path | None = None,
    max_workers: int | None = None,
) -> SweepTable:
    """
    Refinement study against the manufactured solution.

    Args:
        config: Base configuration; grid, initial data, dt and t_end are replaced.
        settings: The experiment.mms section (resolutions, dt_factor, t_end, chi,
            flow, amplitude); defaults apply to missing keys.
        output_dir: Sweep directory; members write into subdirectories.
        max_workers: Upper bound on parallel members.

    Returns:
        Errors and observed orders per resolution. The verdict scalar_order
        fails when the finest observed order of phi or sigma is below 1.8.

    Raises:
        ChbConfigurationError: If the configuration uses the regularized potential.

    """
    if config.model.n is not None:
        msg = "The manufactured solution needs the exact logarithmic potential"
        raise ChbConfigurationError(msg)
    settings = dict(settings or {})
    resolutions = sorted(int(n) for n in settings.get(CONF_RESOLUTIONS, DEFAULT_MMS_RESOLUTIONS))
    dt_factor = float(settings.get(CONF_DT_FACTOR, DEFAULT_MMS_DT_FACTOR))
    t_end = float(settings.get(CONF_T_END, DEFAULT_MMS_T_END))
    solution = ManufacturedSolution(
        amplitude=float(settings.get(CONF_AMPLITUDE, 1.0)),
        lx=config.grid.lx,
        ly=config.grid.ly,
        chi=float(settings.get(CONF_CHI, 0.0)),
        ell=config.model.ell,
        lam=config.model.lam,
        p=config.model.p,
        epsilon=config.model.epsilon,
        pressure_sign=config.flow.pressure_sign,
        flow=bool(settings.get(CONF_FLOW, False)),
    )

    specs = []
    for n in resolutions:
        label = f"mms_{n}"
        member_config = member_output(mms_config(config, solution, n, dt_factor, t_end), output_dir, label)
        specs.append(MemberSpec(label, member_config, forcing=partial(manufactured_forcing, solution)))
    results = run_members(specs, max_workers)

    table = SweepTable("mms", MMS_COLUMNS)
    table.record_failures(results)
    spacings = [min(spec.config.grid.hx, spec.config.grid.hy) for spec in specs]
    errors = [_errors(solution, member) for member in results]

    def orders(index: int) -> list[float | None]:
        values = [e[index] if e[index] > ZERO_ERROR else 0.0 for e in errors]
        return observed_orders(spacings, values)

    order_phi, order_sigma, order_u = orders(0), orders(1), orders(2)
    for k, (spec, member) in enumerate(zip(specs, results, strict=True)):
        table.add_row(
            n=spec.config.grid.nx,
            h=spacings[k],
            dt=spec.config.dt,
            steps=member.steps,
            err_phi=errors[k][0],
            order_phi=order_phi[k],
            err_sigma=errors[k][1],
            order_sigma=order_sigma[k],
            err_u=errors[k][2] if solution.flow else None,
            order_u=order_u[k] if solution.flow else None,
        )

    finest = [order[-1] for order in (order_phi, order_sigma) if order[-1] is not None]
    if not table.complete:
        table.verdicts["scalar_order"] = None
    elif all(max(e[0], e[1]) <= ZERO_ERROR for e in errors):
        table.verdicts["scalar_order"] = True
        table.notes.append("manufactured solution reproduced to roundoff")
    else:
        table.verdicts["scalar_order"] = bool(finest) and min(finest) >= MIN_SCALAR_ORDER
    LOGGER.info("MMS over %s done, finest scalar orders %s", resolutions, finest)
    return table


__all__ = [
    "MIN_SCALAR_ORDER",
    "MMS_COLUMNS",
    "ManufacturedSolution",
    "exact_fields",
    "experiment_mms",
    "manufactured_forcing",
    "mms_config",
]
