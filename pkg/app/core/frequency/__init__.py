from .identities import (
    first_identity_residual,
    frequency_log_derivative_gap,
    halfball_weighted_energy,
    rellich_slack,
    second_identity_residual,
)
from .profile import check_monotonicity, default_monotonicity_tolerance, default_radii, frequency_profile
from .sphere_terms import SphereTerms, check_center, dirichlet_integrals, height, sphere_terms

__all__ = [
    "SphereTerms",
    "check_center",
    "check_monotonicity",
    "default_monotonicity_tolerance",
    "default_radii",
    "dirichlet_integrals",
    "first_identity_residual",
    "frequency_log_derivative_gap",
    "frequency_profile",
    "halfball_weighted_energy",
    "height",
    "rellich_slack",
    "second_identity_residual",
    "sphere_terms",
]
