"""Runtime configuration.

Loads environment variables via `python-dotenv` and exposes a `Config` class with the
resource budgets and solver tolerances used across the package. Nothing is required:
every setting has a desk-scale default, and every function that consumes a budget
also accepts an explicit override.
"""

import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    # Largest number of vertices a BFS may materialize (members plus boundary)
    VERTEX_BUDGET = int(os.environ.get('VERTEX_BUDGET', 1_000_000))

    # Largest monomial basis (dim P^k_m times the torsion order) we assemble matrices on
    BASIS_BUDGET = int(os.environ.get('BASIS_BUDGET', 20_000))

    # Dirichlet solver: balls up to this size are solved exactly when values are rational
    EXACT_SOLVE_LIMIT = int(os.environ.get('EXACT_SOLVE_LIMIT', 5000))
    FLOAT_RESIDUAL_TOL = float(os.environ.get('FLOAT_RESIDUAL_TOL', 1e-12))

    # CLI logging (stderr only, stdout carries the report)
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'WARNING').upper()
