"""
球面与球体上的数值积分

被积函数（evaluator）可以是任意 `points -> values` 的可调用对象，也可以是带
`values_at` 方法的场。所有采样点一次性送入 evaluator，再按半径分段求和，
求和顺序固定，结果可复现。
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial.legendre import leggauss

from app import app_config
from app.config.constant import DEFAULT_QUADRATURE_SPACING
from app.core.exceptions import DomainError

Evaluator = Callable[[np.ndarray], np.ndarray]

_EPS = 1e-12
_GAUSS_NODES, _GAUSS_WEIGHTS = leggauss(2)


@dataclass(frozen=True)
class SphereQuadrature:
    """∂B_r(center) 上的求积规则，权重之和严格等于球面测度"""

    center: np.ndarray
    radius: float
    directions: np.ndarray
    weights: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.center.size)

    @property
    def points(self) -> np.ndarray:
        return self.center + self.radius * self.directions

    @property
    def size(self) -> int:
        return int(self.weights.size)

    def integrate(self, evaluator: Union[Evaluator, object]) -> float:
        values = _callable_of(evaluator)(self.points)
        return float(np.dot(self.weights, values))


def _callable_of(evaluator) -> Evaluator:
    values_at = getattr(evaluator, "values_at", None)
    return values_at if callable(values_at) else evaluator


def _spacing_of(evaluator, spacing: Optional[float]) -> float:
    if spacing is not None:
        return float(spacing)
    return float(getattr(evaluator, "spacing", DEFAULT_QUADRATURE_SPACING))


def check_ball(center: Sequence[float], radius: float) -> np.ndarray:
    """检查球心在薄超平面上且 B_r(center) 落在单位球内"""
    center = np.asarray(center, dtype=np.float64)
    if center.ndim != 1 or center.size not in (2, 3):
        raise DomainError(f"球心维数不合法: {center.tolist()}")
    if abs(center[-1]) > _EPS:
        raise DomainError(f"球心必须在薄超平面 x_n = 0 上: {center.tolist()}")
    if not radius > 0:
        raise DomainError(f"半径必须为正: r={radius}")
    if np.linalg.norm(center) + radius > 1.0 + _EPS:
        raise DomainError(f"球 B_{radius:.6g}({center.tolist()}) 不在单位球内")
    return center


def default_sample_count(radius: float, spacing: float) -> int:
    """n=2 时为角度数 M；n=3 时为经度数 Q（纬度数取 Q/2 向上取整）"""
    minimum = int(app_config.section("geometry_config").get("min_sphere_samples", 64))
    return max(minimum, math.ceil(2.0 * math.pi * radius / spacing))


def _unit_directions(dimension: int, sample_count: int) -> Tuple[np.ndarray, np.ndarray]:
    """单位球面上的方向与（未乘半径幂次的）权重"""
    if dimension == 2:
        theta = (np.arange(sample_count) + 0.5) * (2.0 * np.pi / sample_count)
        directions = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        weights = np.full(sample_count, 2.0 * np.pi / sample_count)
        return directions, weights

    # 纬度-经度乘积规则，极轴取 x_2，使薄超平面上的 x_1 轴落在赤道上
    longitudes = sample_count
    latitudes = max(2, math.ceil(longitudes / 2))
    polar = (np.arange(latitudes) + 0.5) * (np.pi / latitudes)
    azimuth = (np.arange(longitudes) + 0.5) * (2.0 * np.pi / longitudes)
    P, A = np.meshgrid(polar, azimuth, indexing="ij")
    directions = np.stack([np.sin(P) * np.cos(A), np.cos(P), np.sin(P) * np.sin(A)], axis=-1).reshape(-1, 3)
    weights = np.sin(P).reshape(-1)
    weights *= 4.0 * np.pi / weights.sum()
    return directions, weights


def sphere_quadrature(
    center: Sequence[float], radius: float, sample_count: Optional[int] = None, spacing: float = DEFAULT_QUADRATURE_SPACING
) -> SphereQuadrature:
    """构建 ∂B_r(center) 上的求积规则

    Args:
        center: 薄超平面上的球心
        radius: 半径
        sample_count: n=2 为角度数，n=3 为经度数；为 None 时按步长自动选取
        spacing: 自动选取采样数所用的网格步长

    Returns:
        SphereQuadrature
    """
    center = check_ball(center, radius)
    if sample_count is None:
        sample_count = default_sample_count(radius, spacing)
    if sample_count < 4:
        raise DomainError(f"球面采样数过少: {sample_count}")
    directions, weights = _unit_directions(center.size, int(sample_count))
    weights = weights * radius ** (center.size - 1)
    return SphereQuadrature(center=center, radius=float(radius), directions=directions, weights=weights)


def sphere_integral(
    evaluator, center: Sequence[float], radius: float, sample_count: Optional[int] = None, spacing: Optional[float] = None
) -> float:
    """∫_{∂B_r(center)} f"""
    quadrature = sphere_quadrature(center, radius, sample_count, _spacing_of(evaluator, spacing))
    return quadrature.integrate(evaluator)


# ------------------------------
#         球体积分部分
# ------------------------------


def _radial_nodes(breakpoints: np.ndarray, panel_width: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """在相邻断点之间铺两点 Gauss-Legendre 复合规则

    Returns:
        (半径, 径向权重, 每个半径所属的段号)
    """
    radii, weights, segments = [], [], []
    for segment, (a, b) in enumerate(zip(breakpoints[:-1], breakpoints[1:])):
        if b <= a:
            continue
        panels = max(1, math.ceil((b - a) / panel_width - 1e-9))
        edges = np.linspace(a, b, panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        radii.append((mid[:, None] + half[:, None] * _GAUSS_NODES[None, :]).reshape(-1))
        weights.append((half[:, None] * _GAUSS_WEIGHTS[None, :]).reshape(-1))
        segments.append(np.full(2 * panels, segment, dtype=np.int64))
    if not radii:
        return np.empty(0), np.empty(0), np.empty(0, dtype=np.int64)
    return np.concatenate(radii), np.concatenate(weights), np.concatenate(segments)


def _spherical_means(evaluator: Evaluator, center: np.ndarray, radii: np.ndarray, spacing: float) -> np.ndarray:
    """对一组半径批量计算 S(ρ) = ∫_{∂B_ρ} f"""
    if radii.size == 0:
        return np.empty(0)
    rules = [sphere_quadrature(center, rho, spacing=spacing) for rho in radii]
    points = np.concatenate([rule.points for rule in rules])
    weights = np.concatenate([rule.weights for rule in rules])
    offsets = np.cumsum([0] + [rule.size for rule in rules[:-1]])
    values = np.asarray(evaluator(points), dtype=np.float64)
    return np.add.reduceat(weights * values, offsets)


def cumulative_ball_integral(
    evaluator,
    center: Sequence[float],
    radii: Sequence[float],
    radial_weight: bool = False,
    spacing: Optional[float] = None,
) -> np.ndarray:
    """一次性计算一组递增半径上的 ∫_{B_r} f 或 ∫_{B_r} f / |x - center|^{n-2}

    径向断点包含所有给定半径，各半径的结果是逐段累加的，
    因此与单独调用 ball_integral 的结果一致。
    """
    radii = np.asarray(radii, dtype=np.float64)
    if radii.size == 0:
        return np.empty(0)
    if np.any(np.diff(radii) <= 0):
        raise DomainError("半径列表必须严格递增")
    center = check_ball(center, float(radii[-1]))
    if radii[0] <= 0:
        raise DomainError(f"半径必须为正: r={radii[0]}")
    h = _spacing_of(evaluator, spacing)
    evaluate = _callable_of(evaluator)
    n = center.size
    factor = float(app_config.section("geometry_config").get("shell_spacing_factor", 0.5))

    singular = radial_weight and n > 2
    inner = min(h, float(radii[0])) if singular else 0.0
    breakpoints = np.concatenate([[inner], radii])
    rho, w, segment = _radial_nodes(breakpoints, factor * h)

    # 所有壳层半径与冻结内壳的半径一起求值
    probe = np.append(rho, inner) if singular else rho
    means = _spherical_means(evaluate, center, probe, h)
    shell_means = means[: rho.size]

    radial = w * shell_means
    if singular:
        radial = radial * rho ** (2 - n)
    per_segment = np.bincount(segment, weights=radial, minlength=radii.size) if rho.size else np.zeros(radii.size)
    totals = np.cumsum(per_segment[: radii.size])

    if singular:
        # 内壳 [0, a] 上冻结为半径 a 处的球面平均，精确积分权重
        totals = totals + means[-1] * inner ** (3 - n) / 2.0
    return totals


def ball_integral(
    evaluator, center: Sequence[float], radius: float, radial_weight: bool = False, spacing: Optional[float] = None
) -> float:
    """∫_{B_r(center)} f，radial_weight 为 True 时带权 |x - center|^{2-n}

    Args:
        evaluator: 被积函数或场
        center: 薄超平面上的球心
        radius: 半径
        radial_weight: 是否带径向权重（n=2 时权重恒为 1）
        spacing: 径向分段与球面采样所用的步长，默认取场自身的步长

    Returns:
        积分值
    """
    return float(cumulative_ball_integral(evaluator, center, [radius], radial_weight, spacing)[0])


def shell_integral(
    evaluator,
    center: Sequence[float],
    r_inner: float,
    r_outer: float,
    radial_weight: bool = False,
    spacing: Optional[float] = None,
) -> float:
    """环域 r_inner < |x - center| < r_outer 上的积分，径向步长 h/2 的两点 Gauss 复合规则"""
    if not 0 <= r_inner < r_outer:
        raise DomainError(f"环域半径不合法: ({r_inner}, {r_outer})")
    center = check_ball(center, r_outer)
    h = _spacing_of(evaluator, spacing)
    factor = float(app_config.section("geometry_config").get("shell_spacing_factor", 0.5))
    rho, w, _ = _radial_nodes(np.array([r_inner, r_outer]), factor * h)
    means = _spherical_means(_callable_of(evaluator), center, rho, h)
    if radial_weight:
        means = means * rho ** (2 - center.size)
    return float(np.dot(w, means))
