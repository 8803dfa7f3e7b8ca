from typing import Protocol, runtime_checkable

import numpy as np

from .grid import GridSpec, NodeClass, build_grid, check_grid
from .field import (
    ScalarField,
    half_space_gradient,
    gradient,
    interpolate,
    normal_derivative_thin,
    reflect,
    stencil_average,
)
from .quadrature import (
    SphereQuadrature,
    ball_integral,
    check_ball,
    cumulative_ball_integral,
    default_sample_count,
    shell_integral,
    sphere_integral,
    sphere_quadrature,
)


@runtime_checkable
class FieldLike(Protocol):
    """可以被频率、爆破分析读取的场：网格场或其重标度"""

    @property
    def dimension(self) -> int: ...

    @property
    def spacing(self) -> float: ...

    @property
    def value_radius(self) -> float: ...

    @property
    def gradient_radius(self) -> float: ...

    def values_at(self, points: np.ndarray) -> np.ndarray: ...

    def gradient_at(self, points: np.ndarray) -> np.ndarray: ...


__all__ = [
    "FieldLike",
    "GridSpec",
    "NodeClass",
    "ScalarField",
    "SphereQuadrature",
    "ball_integral",
    "build_grid",
    "check_grid",
    "half_space_gradient",
    "check_ball",
    "cumulative_ball_integral",
    "default_sample_count",
    "gradient",
    "interpolate",
    "normal_derivative_thin",
    "reflect",
    "shell_integral",
    "sphere_integral",
    "sphere_quadrature",
    "stencil_average",
]
