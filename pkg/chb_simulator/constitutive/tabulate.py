"""Tabulation of the constitutive functions for offline plotting."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray

from chb_simulator.const import LOGGER

from .params import PotentialParams, SensitivityParams
from .potential import monotone_part, potential_F
from .sensitivity import alpha, gamma, gamma_hat

TABLE_COLUMNS = ("s", "alpha", "gamma", "gamma_hat", "beta_n", "F_n")


def tabulate_constitutive(
    s_values: ArrayLike, potential: PotentialParams, sensitivity: SensitivityParams
) -> dict[str, NDArray[np.float64]]:
    """
    Evaluate every constitutive function on s_values.

    Entries outside a function's domain are NaN: alpha needs s >= 0, gamma
    and gamma_hat need s > 0, and the exact beta and F need |s| < 1.
    """
    s = np.asarray(s_values, dtype=np.float64)
    table = {column: np.full(s.shape, np.nan) for column in TABLE_COLUMNS}
    table["s"] = s.copy()

    nonneg = s >= 0.0
    positive = s > 0.0
    table["alpha"][nonneg] = alpha(s[nonneg], sensitivity)
    table["gamma"][positive] = gamma(s[positive], sensitivity)
    table["gamma_hat"][positive] = gamma_hat(s[positive], sensitivity)

    inside = np.ones(s.shape, dtype=bool) if not potential.is_exact else np.abs(s) < 1.0
    table["beta_n"][inside] = monotone_part(s[inside], potential)
    table["F_n"][inside] = potential_F(s[inside], potential)
    return table


def write_constitutive_table(path: Path, table: dict[str, NDArray[np.float64]]) -> Path:
    """Write a tabulation as CSV with the fixed TABLE_COLUMNS order."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(TABLE_COLUMNS)
        writer.writerows(zip(*(table[column].tolist() for column in TABLE_COLUMNS), strict=True))
    LOGGER.info("Wrote constitutive table with %d rows to %s", len(table["s"]), path)
    return path


__all__ = ["TABLE_COLUMNS", "tabulate_constitutive", "write_constitutive_table"]
