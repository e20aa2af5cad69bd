"""Vanishing viscosity sweep: Brinkman runs against the Darcy run."""

from __future__ import annotations

from collections.abc import Sequence
from itertools import pairwise
import math
from pathlib import Path

import numpy as np

from chb_simulator.const import LOGGER
from chb_simulator.data import SimConfig
from chb_simulator.grid import norm_sq

from .runner import MemberResult, MemberSpec, member_output, run_members
from .tables import NON_UNIQUENESS_NOTE, SweepTable

DARCY_COLUMNS = ("epsilon", "u_gap_L2Q", "sigma_gap_L2", "phi_gap_L2", "steps")
DARCY_LABEL = "eps_0_darcy"


def _label(eps: float) -> str:
    return f"eps_{eps:.3e}"


def velocity_gap(member: MemberResult, reference: MemberResult) -> float:
    """
    Space-time L2 distance of the velocities, right-endpoint in time.

    Raises:
        ValueError: If the runs did not record velocities on the same time grid.

    """
    if member.velocities is None or reference.velocities is None or member.dts is None:
        msg = "Velocity gap needs runs with recorded velocities"
        raise ValueError(msg)
    if member.velocities.shape != reference.velocities.shape:
        msg = f"Runs differ in length: {member.velocities.shape} vs {reference.velocities.shape}"
        raise ValueError(msg)
    grid = member.final_state.grid if member.final_state is not None else None
    weight = grid.cell_volume if grid is not None else 1.0
    squared = np.sum((member.velocities - reference.velocities) ** 2, axis=1) * weight
    return math.sqrt(float(np.sum(member.dts[1:] * squared[1:])))


def experiment_darcy_sweep(
    config: SimConfig,
    eps_list: Sequence[float],
    output_dir: Path | None = None,
    max_workers: int | None = None,
) -> SweepTable:
    """
    Run the configuration at every epsilon of eps_list and at epsilon = 0.

    The table lists, per positive epsilon, the L2(Q) velocity gap and the
    final-time L2 gaps of sigma and phi to the Darcy run. The u-gap must not
    increase as epsilon decreases. A list holding only 0 gives a single Darcy
    run and an empty table.

    Args:
        config: Base configuration; its epsilon is replaced.
        eps_list: Strictly decreasing viscosities >= 0.
        output_dir: Sweep directory; members write into subdirectories.
        max_workers: Upper bound on parallel members.

    Raises:
        ValueError: If eps_list is empty or not strictly decreasing.

    """
    eps_values = [float(eps) for eps in eps_list]
    if not eps_values or any(later >= earlier for earlier, later in pairwise(eps_values)) or min(eps_values) < 0:
        msg = f"eps_list must be nonempty, nonnegative and strictly decreasing, got {eps_values}"
        raise ValueError(msg)
    positive = [eps for eps in eps_values if eps > 0]

    specs = [
        MemberSpec(DARCY_LABEL, member_output(config.with_model(epsilon=0.0), output_dir, DARCY_LABEL), keep_velocity=True)
    ]
    specs += [
        MemberSpec(_label(eps), member_output(config.with_model(epsilon=eps), output_dir, _label(eps)), keep_velocity=True)
        for eps in positive
    ]
    results = run_members(specs, max_workers)

    table = SweepTable("darcy_sweep", DARCY_COLUMNS, notes=[NON_UNIQUENESS_NOTE])
    table.record_failures(results)
    reference, members = results[0], results[1:]
    if not reference.ok:
        LOGGER.error("Darcy reference run failed; the gap table is empty")
        table.verdicts["u_gap_monotone"] = None
        return table

    for eps, member in zip(positive, members, strict=True):
        if not member.ok or member.final_state is None or reference.final_state is None:
            continue
        final, ref = member.final_state, reference.final_state
        table.add_row(
            epsilon=eps,
            u_gap_L2Q=velocity_gap(member, reference),
            sigma_gap_L2=math.sqrt(norm_sq(final.sigma - ref.sigma)),
            phi_gap_L2=math.sqrt(norm_sq(final.phi - ref.phi)),
            steps=member.steps,
        )

    gaps = table.column("u_gap_L2Q")
    if len(gaps) < 2:
        table.verdicts["u_gap_monotone"] = None
    else:
        table.verdicts["u_gap_monotone"] = all(later <= earlier for earlier, later in pairwise(gaps))
        if gaps[-1] > 0:
            table.notes.append(f"u-gap ratio largest/smallest epsilon: {gaps[0] / gaps[-1]:.3g}")
    LOGGER.info("Darcy sweep over %d viscosities done, complete=%s", len(positive), table.complete)
    return table


__all__ = ["DARCY_COLUMNS", "experiment_darcy_sweep", "velocity_gap"]
