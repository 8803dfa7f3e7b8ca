from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from app.core.exceptions import DomainError
from app.core.geometry import FieldLike, cumulative_ball_integral, default_sample_count, sphere_quadrature


@dataclass(frozen=True)
class SphereTerms:
    """∂B_r(center) 上的边界积分"""

    radius: float
    sample_count: int
    H: float  # ∮ u²
    flux: float  # ∮ u u_ν
    gradient: float  # ∮ |∇u|²
    normal: float  # ∮ u_ν²


def check_center(center: Sequence[float], dimension: int) -> np.ndarray:
    """中心必须在薄超平面上且 x_1 >= 0"""
    center = np.asarray(center, dtype=np.float64)
    if center.shape != (dimension,):
        raise DomainError(f"中心 {center.tolist()} 的维数与场的维数 {dimension} 不一致")
    if abs(center[-1]) > 1e-12:
        raise DomainError(f"中心必须在薄超平面 x_n = 0 上: {center.tolist()}")
    if center[0] < 0:
        raise DomainError(f"中心必须满足 x_1 >= 0: {center.tolist()}")
    return center


def resolve_sample_count(field: FieldLike, radius: float, sample_count: Optional[int]) -> int:
    return int(sample_count) if sample_count is not None else default_sample_count(radius, field.spacing)


def sphere_terms(field: FieldLike, center: Sequence[float], radius: float, sample_count: Optional[int] = None) -> SphereTerms:
    """一次采样同时求出 H、∮uu_ν、∮|∇u|² 与 ∮u_ν²"""
    sample_count = resolve_sample_count(field, radius, sample_count)
    rule = sphere_quadrature(center, radius, sample_count)
    points = rule.points
    values = field.values_at(points)
    gradient = field.gradient_at(points)
    normal = np.einsum("ij,ij->i", gradient, rule.directions)
    weights = rule.weights
    return SphereTerms(
        radius=float(radius),
        sample_count=sample_count,
        H=float(weights @ (values * values)),
        flux=float(weights @ (values * normal)),
        gradient=float(weights @ np.einsum("ij,ij->i", gradient, gradient)),
        normal=float(weights @ (normal * normal)),
    )


def height(field: FieldLike, center: Sequence[float], radius: float, sample_count: Optional[int] = None) -> float:
    """H(r) = ∮_{∂B_r} u²，只需要场值"""
    rule = sphere_quadrature(center, radius, resolve_sample_count(field, radius, sample_count))
    values = field.values_at(rule.points)
    return float(rule.weights @ (values * values))


def gradient_energy_density(field: FieldLike):
    """|∇u|² 作为被积函数"""

    def evaluate(points: np.ndarray) -> np.ndarray:
        gradient = field.gradient_at(points)
        return np.einsum("ij,ij->i", gradient, gradient)

    return evaluate


def dirichlet_integrals(field: FieldLike, center: Sequence[float], radii: Sequence[float], radial_weight: bool = False) -> np.ndarray:
    """一组半径上的 ∫_{B_r} |∇u|²（可带权 |x - center|^{2-n}）"""
    return cumulative_ball_integral(gradient_energy_density(field), center, radii, radial_weight, spacing=field.spacing)
