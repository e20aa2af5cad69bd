"""Time-series CSV of diagnostics records, one row per recorded step."""

from __future__ import annotations

import csv
from dataclasses import fields
from pathlib import Path
from types import TracebackType
from typing import IO, Self

from chb_simulator.const import LOGGER
from chb_simulator.nutrient import EntropyReport

from .record import DiagnosticsRecord

# Append-only: new columns go at the end.
CSV_COLUMNS: tuple[str, ...] = tuple(
    [item.name for item in fields(DiagnosticsRecord) if item.name != "entropy"]
    + [f"entropy_{item.name}" for item in fields(EntropyReport)]
)


class DiagnosticsCsvWriter:
    """
    Streams records to a CSV file with a fixed header.

    Example:
        >>> with DiagnosticsCsvWriter(path) as writer:
        ...     writer.write(record)

    """

    def __init__(self, path: Path | str) -> None:
        """Remember the target; the file opens on enter."""
        self.path = Path(path)
        self._handle: IO[str] | None = None
        self._writer: csv.DictWriter | None = None
        self.rows = 0

    def __enter__(self) -> Self:
        """Open the file and write the header."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = self.path.open("w", newline="", encoding="utf-8")
        self._writer = csv.DictWriter(self._handle, fieldnames=CSV_COLUMNS)
        self._writer.writeheader()
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        traceback: TracebackType | None,
    ) -> None:
        """Close the file."""
        if self._handle is not None:
            self._handle.close()
            LOGGER.debug("Wrote %d diagnostics rows to %s", self.rows, self.path)
        self._handle = None
        self._writer = None

    def write(self, record: DiagnosticsRecord) -> None:
        """Append one record and flush."""
        if self._writer is None or self._handle is None:
            msg = "DiagnosticsCsvWriter used outside its context"
            raise RuntimeError(msg)
        self._writer.writerow(record.as_row())
        self._handle.flush()
        self.rows += 1


def read_diagnostics_csv(path: Path | str) -> dict[str, list[float]]:
    """Read a diagnostics CSV back into columns of floats."""
    with Path(path).open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        columns: dict[str, list[float]] = {name: [] for name in reader.fieldnames or ()}
        for row in reader:
            for name, value in row.items():
                columns[name].append(float(value))
    return columns


__all__ = ["CSV_COLUMNS", "DiagnosticsCsvWriter", "read_diagnostics_csv"]
