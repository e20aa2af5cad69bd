"""
Structural diagnostics of a run.

Package structure:
- energy.py: total_energy, the coercivity envelope and the growth envelope
- residuals.py: energy_inequality_residual, entropy_identity_residual, source_power
- norms.py: theorem exponents and theorem_norm_report
- record.py: DiagnosticsRecord and make_record
- csv_writer.py: fixed-header CSV time series
- summary.py: run summary with invariant verdicts
"""

from __future__ import annotations

from .csv_writer import CSV_COLUMNS, DiagnosticsCsvWriter, read_diagnostics_csv
from .energy import EnergyEnvelope, GrowthEnvelope, fit_energy_envelope, fit_growth_envelope, total_energy
from .norms import TheoremExponents, theorem_exponents, theorem_norm_report
from .record import DiagnosticsRecord, make_record
from .residuals import dissipation, energy_inequality_residual, entropy_identity_residual, source_power
from .summary import build_run_summary, invariant_verdicts, write_summary

__all__ = [
    "CSV_COLUMNS",
    "DiagnosticsCsvWriter",
    "DiagnosticsRecord",
    "EnergyEnvelope",
    "GrowthEnvelope",
    "TheoremExponents",
    "build_run_summary",
    "dissipation",
    "energy_inequality_residual",
    "entropy_identity_residual",
    "fit_energy_envelope",
    "fit_growth_envelope",
    "invariant_verdicts",
    "make_record",
    "read_diagnostics_csv",
    "source_power",
    "theorem_exponents",
    "theorem_norm_report",
    "total_energy",
    "write_summary",
]
