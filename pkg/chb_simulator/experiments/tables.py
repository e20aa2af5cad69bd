"""Result tables of the experiments."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
import math
from pathlib import Path
from typing import Any

import numpy as np

from chb_simulator.const import EXIT_FAILURE, EXIT_OK

from .runner import MemberResult

NON_UNIQUENESS_NOTE = (
    "weak solutions of the continuous problem are not unique; rows compare the "
    "deterministic trajectories of the scheme"
)


@dataclass
class SweepTable:
    """
    Rows of one experiment with its verdicts.

    Attributes:
        name: Experiment name, used for file names.
        columns: Column order of rows and CSV output.
        rows: One mapping per row.
        verdicts: Named checks; None means not applicable.
        failures: Exit codes of member runs that did not reach t_end.
        notes: Free-form remarks for the summary.

    """

    name: str
    columns: tuple[str, ...]
    rows: list[dict[str, Any]] = field(default_factory=list)
    verdicts: dict[str, bool | None] = field(default_factory=dict)
    failures: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        """Every member reached t_end."""
        return not self.failures

    @property
    def exit_code(self) -> int:
        """First member failure, 1 for a failed verdict, else 0."""
        if self.failures:
            return next(iter(self.failures.values()))
        if any(verdict is False for verdict in self.verdicts.values()):
            return EXIT_FAILURE
        return EXIT_OK

    def add_row(self, **values: Any) -> None:
        """Append a row; missing columns are left empty."""
        unknown = set(values) - set(self.columns)
        if unknown:
            msg = f"Unknown columns for {self.name}: {', '.join(sorted(unknown))}"
            raise KeyError(msg)
        self.rows.append({column: _builtin(values.get(column)) for column in self.columns})

    def record_failures(self, results: list[MemberResult]) -> None:
        """Mark failed members; the table is then incomplete."""
        for result in results:
            if not result.ok:
                self.failures[result.label] = result.exit_code

    def column(self, name: str) -> list[Any]:
        """Values of one column in row order."""
        return [row[name] for row in self.rows]

    def write_csv(self, path: Path) -> Path:
        """Write the rows with a header line."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=self.columns)
            writer.writeheader()
            writer.writerows(self.rows)
        return path

    def as_dict(self) -> dict[str, Any]:
        """Serializable form for the sweep summary."""
        return {
            "name": self.name,
            "complete": self.complete,
            "exit_code": self.exit_code,
            "columns": list(self.columns),
            "rows": self.rows,
            "verdicts": self.verdicts,
            "failures": self.failures,
            "notes": self.notes,
        }

    def format(self) -> str:
        """Fixed-width text rendering for the terminal."""
        cells = [[_cell(row[column]) for column in self.columns] for row in self.rows]
        widths = [max([len(column), *(len(line[i]) for line in cells)]) for i, column in enumerate(self.columns)]
        rule = "-" * (sum(widths) + 2 * (len(widths) - 1))
        lines = [self.name, rule, "  ".join(c.rjust(w) for c, w in zip(self.columns, widths, strict=True)), rule]
        lines += ["  ".join(c.rjust(w) for c, w in zip(line, widths, strict=True)) for line in cells]
        lines.append(rule)
        lines += [f"{name}: {_verdict(value)}" for name, value in self.verdicts.items()]
        lines += [f"failed: {label} (exit {code})" for label, code in self.failures.items()]
        return "\n".join(lines)


def _builtin(value: Any) -> Any:
    return value.item() if isinstance(value, np.generic) else value


def _cell(value: Any) -> str:
    if value is None:
        return "---"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return "nan" if math.isnan(value) else f"{value:.4e}"
    return str(value)


def _verdict(value: bool | None) -> str:
    if value is None:
        return "n/a"
    return "PASS" if value else "FAIL"


def observed_orders(spacings: list[float], errors: list[float]) -> list[float | None]:
    """
    Orders log(e_{k-1} / e_k) / log(h_{k-1} / h_k); None for the first row or a zero error.

    Example:
        >>> observed_orders([0.5, 0.25], [1.0, 0.25])
        [None, 2.0]

    """
    orders: list[float | None] = [None]
    for k in range(1, len(spacings)):
        if errors[k] > 0 and errors[k - 1] > 0:
            orders.append(math.log(errors[k - 1] / errors[k]) / math.log(spacings[k - 1] / spacings[k]))
        else:
            orders.append(None)
    return orders


__all__ = ["NON_UNIQUENESS_NOTE", "SweepTable", "observed_orders"]
