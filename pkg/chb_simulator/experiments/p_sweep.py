"""Sensitivity exponent sweep."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

from chb_simulator.const import LOGGER
from chb_simulator.constitutive import P_THREE_D_MIN
from chb_simulator.data import SimConfig
from chb_simulator.diagnostics import theorem_exponents

from .runner import MemberSpec, member_output, run_members
from .tables import NON_UNIQUENESS_NOTE, SweepTable

P_COLUMNS = ("p", "final_energy", "min_sigma", "sup_H_norm_sq", "P0", "S", "R", "three_d_range")


def experiment_p_sweep(
    config: SimConfig,
    p_list: Sequence[float],
    output_dir: Path | None = None,
    max_workers: int | None = None,
) -> SweepTable:
    """
    Run identical configurations across sensitivity exponents p in (1, 2].

    Each row holds the final energy, the smallest nutrient value of the run,
    the largest squared H dissipation, the exponents P0, S and R, and whether
    p lies in (12/11, 2].
    """
    values = [float(p) for p in p_list]
    specs = [
        MemberSpec(f"p_{p:g}", member_output(config.with_model(p=p), output_dir, f"p_{p:g}")) for p in values
    ]
    results = run_members(specs, max_workers)

    table = SweepTable("p_sweep", P_COLUMNS, notes=[NON_UNIQUENESS_NOTE])
    table.record_failures(results)
    for p, member in zip(values, results, strict=True):
        if not member.ok:
            continue
        exponents = theorem_exponents(p, config.model.q_monitor)
        records = member.records
        table.add_row(
            p=p,
            final_energy=records[-1].energy,
            min_sigma=min(record.min_sigma for record in records),
            sup_H_norm_sq=max(record.h_norm_sq for record in records),
            P0=exponents.p0,
            S=exponents.s,
            R=exponents.r,
            three_d_range=P_THREE_D_MIN < p <= 2.0,
        )
    LOGGER.info("p sweep over %s done, complete=%s", values, table.complete)
    return table


__all__ = ["P_COLUMNS", "experiment_p_sweep"]
