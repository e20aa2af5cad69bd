"""
Step loop of the simulator.

This package advances the coupled system in time, retries failed steps with
smaller time steps and writes the run artifacts.

Package structure:
- base.py: SimulationCoordinator (flow -> phase -> nutrient -> diagnostics)
- data_processing.py: initial state, mass source and snapshot helpers
- error_handling.py: retry decisions, dt halving and exit codes
- listeners.py: step listeners and step timing
"""

from __future__ import annotations

from .base import SimulationCoordinator
from .listeners import StepListener

__all__ = ["SimulationCoordinator", "StepListener"]
