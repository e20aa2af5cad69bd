"""Regularization sweep over the index n of the regularized potential."""

from __future__ import annotations

from collections.abc import Sequence
from itertools import pairwise
import math
from pathlib import Path

import numpy as np

from chb_simulator.const import LOGGER, REGULARIZATION_EXACT
from chb_simulator.constitutive import monotone_part
from chb_simulator.constitutive.regularization import truncation
from chb_simulator.data import SimConfig
from chb_simulator.exceptions import ChbConfigurationError
from chb_simulator.grid import ScalarField, norm_sq

from .runner import MemberResult, MemberSpec, member_output, run_members
from .tables import NON_UNIQUENESS_NOTE, SweepTable

N_COLUMNS = ("n", "sup_abs_phi", "final_energy", "beta_min", "beta_max", "truncation_L2", "h2_over_sqrt_n")
SUP_SPREAD_LIMIT = 0.2


def _row(n: int | str, member: MemberResult, config: SimConfig) -> dict[str, float | int | str | None]:
    state = member.final_state
    if state is None:
        msg = f"Member n={n} has no final state"
        raise ChbConfigurationError(msg)
    model = config.model.with_changes(n=None if n == REGULARIZATION_EXACT else n)
    beta = monotone_part(state.phi.values, model.potential)
    h2 = max(math.sqrt(r.phi_sq + r.grad_phi_sq + r.lap_phi_sq) for r in member.records)
    return {
        "n": n,
        "sup_abs_phi": max(r.max_abs_phi for r in member.records),
        "final_energy": member.records[-1].energy,
        "beta_min": float(np.min(beta)),
        "beta_max": float(np.max(beta)),
        "truncation_L2": math.sqrt(norm_sq(ScalarField(state.grid, truncation(state.phi.values)))),
        "h2_over_sqrt_n": None if n == REGULARIZATION_EXACT else h2 / math.sqrt(float(n)),
    }


def experiment_n_sweep(
    config: SimConfig,
    n_list: Sequence[int | str],
    output_dir: Path | None = None,
    max_workers: int | None = None,
) -> SweepTable:
    """
    Run identical configurations across regularization indices.

    "exact" in n_list adds the logarithmic potential as a reference column.
    Verdicts: the sup norm of phi stays within a common bound (relative
    spread below 20% across integer n) and the final energies form a Cauchy
    sequence (differences nonincreasing in n).

    Raises:
        ChbConfigurationError: If n_list holds no integer index.

    """
    indices = sorted({int(n) for n in n_list if n != REGULARIZATION_EXACT})
    if not indices:
        msg = "n sweep needs at least one integer regularization index"
        raise ChbConfigurationError(msg)
    labels: list[int | str] = list(indices)
    if REGULARIZATION_EXACT in n_list:
        labels.append(REGULARIZATION_EXACT)

    specs = []
    for n in labels:
        label = f"n_{n}"
        member_config = config.with_model(n=None if n == REGULARIZATION_EXACT else n)
        specs.append(MemberSpec(label, member_output(member_config, output_dir, label)))
    results = run_members(specs, max_workers)

    table = SweepTable("n_sweep", N_COLUMNS, notes=[NON_UNIQUENESS_NOTE])
    table.record_failures(results)
    for n, member in zip(labels, results, strict=True):
        if member.ok:
            table.add_row(**_row(n, member, config))

    integer_rows = [row for row in table.rows if row["n"] != REGULARIZATION_EXACT]
    sups = [row["sup_abs_phi"] for row in integer_rows]
    if len(sups) >= 2 and max(sups) > 0:
        table.verdicts["uniform_sup_bound"] = (max(sups) - min(sups)) / max(sups) < SUP_SPREAD_LIMIT
    else:
        table.verdicts["uniform_sup_bound"] = None
    energies = [row["final_energy"] for row in integer_rows]
    if len(energies) >= 3:
        differences = [abs(b - a) for a, b in pairwise(energies)]
        table.verdicts["energy_cauchy"] = all(
            later <= earlier * (1.0 + 1e-9) + 1e-14 for earlier, later in pairwise(differences)
        )
    else:
        table.verdicts["energy_cauchy"] = None
    LOGGER.info("n sweep over %s done, complete=%s", labels, table.complete)
    return table


__all__ = ["N_COLUMNS", "experiment_n_sweep"]
