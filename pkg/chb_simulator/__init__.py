"""
Structure-preserving simulator for a Cahn-Hilliard-Brinkman system with chemotaxis.

The phase field phi follows a Cahn-Hilliard-Oono equation with a singular
logarithmic (or Yosida-regularized) potential, the nutrient sigma a degenerate
cross-diffusion equation, and the velocity u a Brinkman or Darcy law driven by
the Korteweg force. Each step keeps |phi| < 1, sigma >= 0, the discrete mass
balance and the energy structure.

Package structure:
- grid/: staggered finite-volume grid, operators and field snapshots
- constitutive/: potential, regularization, sensitivity and sources
- cahn_hilliard/: the implicit phase step and the mass reference
- nutrient/: positivity-preserving nutrient step and entropy functionals
- flow/: Darcy and Brinkman solves and the Korteweg force
- diagnostics/: energy, residuals, theorem norms, CSV and run summary
- coordinator/: the operator-split step loop with dt halving
- config_handler/: YAML loading, schemas and assumption validators
- experiments/: Darcy, n and p sweeps and the manufactured-solution study
- utils/: logging setup, run directory naming and version stamp
- cli.py: the chb-sim command line
"""
