from typing import Optional, Sequence

import numpy as np

from app import app_config
from app.config.constant import DEGENERATE_H
from app.core.exceptions import DegenerateFieldError, DomainError
from app.core.frequency import height
from app.core.geometry import FieldLike, check_ball, sphere_quadrature


class BlowupField:
    """u_{x0,r}(x) = u(r x + x0) / ‖u‖，‖u‖ = (r^{1-n} ∮_{∂B_r(x0)} u²)^{1/2}

    不在网格上重新采样，而是对原场做复合求值。步长按 h / r 缩放，
    因此在重标度场上半径 ρ 的球面/球体积分与原场上半径 ρr 的积分
    使用同一组采样点，标度恒等式 N(ρ, u_r) = N(ρr, u) 只差舍入误差。
    """

    def __init__(self, base: FieldLike, center: np.ndarray, scale: float, normalization: float):
        self.base = base
        self.center = np.asarray(center, dtype=np.float64)
        self.scale = float(scale)
        self.normalization = float(normalization)

    @property
    def dimension(self) -> int:
        return self.base.dimension

    @property
    def spacing(self) -> float:
        return self.base.spacing / self.scale

    @property
    def value_radius(self) -> float:
        return (self.base.value_radius - float(np.linalg.norm(self.center))) / self.scale

    @property
    def gradient_radius(self) -> float:
        return (self.base.gradient_radius - float(np.linalg.norm(self.center))) / self.scale

    def _original(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return self.scale * points + self.center

    def values_at(self, points: np.ndarray) -> np.ndarray:
        return self.base.values_at(self._original(points)) / self.normalization

    def gradient_at(self, points: np.ndarray) -> np.ndarray:
        return self.scale * self.base.gradient_at(self._original(points)) / self.normalization


def rescale(field: FieldLike, x0: Sequence[float], r: float) -> BlowupField:
    """围绕薄超平面上的点 x0 以尺度 r 重标度并在 ∂B_1 上归一化

    Args:
        field: 网格场（或另一个重标度场）
        x0: 薄超平面上的中心
        r: 尺度，要求 B_r(x0) 在单位球内

    Returns:
        BlowupField
    """
    center = check_ball(x0, r)
    H = height(field, center, r)
    if H <= DEGENERATE_H:
        raise DegenerateFieldError(f"场在 ∂B_{r:.6g}({center.tolist()}) 上为零，无法归一化")
    normalization = np.sqrt(r ** (1 - field.dimension) * H)
    return BlowupField(field, center, r, normalization)


def _deviation_directions(dimension: int, count: int) -> np.ndarray:
    """固定的方向集：n=2 为等距角度，n=3 为黄金角螺旋"""
    k = np.arange(count) + 0.5
    if dimension == 2:
        angles = k * (2.0 * np.pi / count)
        return np.stack([np.cos(angles), np.sin(angles)], axis=1)
    polar = np.arccos(1.0 - 2.0 * k / count)
    azimuth = np.pi * (1.0 + np.sqrt(5.0)) * k
    return np.stack([np.sin(polar) * np.cos(azimuth), np.cos(polar), np.sin(polar) * np.sin(azimuth)], axis=1)


def homogeneity_deviation(
    blowup_field: FieldLike, kappa: float, radii: Optional[Sequence[float]] = None, direction_count: Optional[int] = None
) -> float:
    """max |u(ρθ) - ρ^κ u(θ)| / sup_{∂B_1} |u|，ρ 取 {0.25, 0.5}

    sup 在 ∂B_1 的求积点上取；sup 为 0 时返回 0。
    """
    if not kappa > 0:
        raise DomainError(f"kappa 必须为正: {kappa}")
    section = app_config.section("blowup_config")
    radii = section.get("deviation_radii", [0.25, 0.5]) if radii is None else radii
    direction_count = int(direction_count or section.get("deviation_directions", 16))

    dimension = blowup_field.dimension
    rule = sphere_quadrature(np.zeros(dimension), 1.0, spacing=blowup_field.spacing)
    sup = float(np.abs(blowup_field.values_at(rule.directions)).max())
    if sup < DEGENERATE_H:
        return 0.0

    directions = _deviation_directions(dimension, direction_count)
    on_sphere = blowup_field.values_at(directions)
    worst = 0.0
    for rho in radii:
        inside = blowup_field.values_at(rho * directions)
        worst = max(worst, float(np.abs(inside - rho**kappa * on_sphere).max()))
    return worst / sup
