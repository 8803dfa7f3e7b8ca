from .decay import (
    ball_sup,
    clamp_distance_decay,
    decay_exponent,
    default_decay_radii,
    local_boundedness_ratio,
    node_distances,
)
from .stability import boundary_stability
from .subharmonic import difference_subharmonicity, subharmonicity_check

__all__ = [
    "ball_sup",
    "boundary_stability",
    "clamp_distance_decay",
    "decay_exponent",
    "default_decay_radii",
    "difference_subharmonicity",
    "local_boundedness_ratio",
    "node_distances",
    "subharmonicity_check",
]
