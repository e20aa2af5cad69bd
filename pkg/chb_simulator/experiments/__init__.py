"""
Experiments built from repeated simulation runs.

Package structure:
------------------
- runner.py: Member specs and results, process pool capped by CHB_THREADS
- tables.py: SweepTable with CSV and text output, observed orders
- darcy_sweep.py: Brinkman runs against the Darcy run as epsilon decreases
- n_sweep.py: Regularization index sweep with uniform bound checks
- p_sweep.py: Sensitivity exponent sweep with the theorem exponents
- mms.py: Manufactured-solution refinement study
"""

from __future__ import annotations

from .darcy_sweep import experiment_darcy_sweep, velocity_gap
from .mms import ManufacturedSolution, exact_fields, experiment_mms, manufactured_forcing, mms_config
from .n_sweep import experiment_n_sweep
from .p_sweep import experiment_p_sweep
from .runner import MemberResult, MemberSpec, member_output, run_member, run_members, sweep_workers
from .tables import SweepTable, observed_orders

__all__ = [
    "ManufacturedSolution",
    "MemberResult",
    "MemberSpec",
    "SweepTable",
    "exact_fields",
    "experiment_darcy_sweep",
    "experiment_mms",
    "experiment_n_sweep",
    "experiment_p_sweep",
    "manufactured_forcing",
    "member_output",
    "mms_config",
    "observed_orders",
    "run_member",
    "run_members",
    "sweep_workers",
    "velocity_gap",
]
