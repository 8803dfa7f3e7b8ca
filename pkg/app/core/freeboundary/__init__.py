from .admissibility import admissibility_check, nearest_half_odd, nearest_planar_interior
from .classification import candidate_points, classify_fixed_boundary, classify_point
from .decomposition import decompose_thin, default_rho_near, default_tau_contact

__all__ = [
    "admissibility_check",
    "candidate_points",
    "classify_fixed_boundary",
    "classify_point",
    "decompose_thin",
    "default_rho_near",
    "default_tau_contact",
    "nearest_half_odd",
    "nearest_planar_interior",
]
