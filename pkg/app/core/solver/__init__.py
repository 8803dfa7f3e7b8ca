from .diagnostics import complementarity_residual, discrete_laplacian_residual, energy, energy_perturbation_gap
from .oracle import OracleSolution, oracle_minimize, oracle_solve
from .projected_sor import boundary_values, minimize

__all__ = [
    "OracleSolution",
    "boundary_values",
    "complementarity_residual",
    "discrete_laplacian_residual",
    "energy",
    "energy_perturbation_gap",
    "minimize",
    "oracle_minimize",
    "oracle_solve",
]
