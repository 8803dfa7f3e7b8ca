from typing import Optional, Sequence, Tuple

import numpy as np

from app import app_config, logger
from app.config.constant import DEGENERATE_H
from app.core.exceptions import DegenerateFieldError, DomainError
from app.core.geometry import ScalarField, ball_integral
from app.schemas.regularity import ClampDistanceFit, DecayFit

# 衰减拟合半径的上限
DECAY_RADIUS_MAX = 0.4


def _log_fit(x: np.ndarray, y: np.ndarray, corrected: bool = False) -> Tuple[float, float, float, float]:
    """log y 对 log x 的最小二乘拟合

    corrected 时拟合 log y ≈ log C + α log x + β x，β x 吸收相对主项高一阶的
    下一项；点数不足三个时退化为直线。

    Returns:
        (α, C, β, 残差均方根)
    """
    log_x, log_y = np.log(x), np.log(y)
    columns = [np.ones_like(log_x), log_x]
    if corrected and x.size >= 3:
        columns.append(x)
    design = np.stack(columns, axis=1)
    coefficients, *_ = np.linalg.lstsq(design, log_y, rcond=None)
    residual = log_y - design @ coefficients
    beta = float(coefficients[2]) if len(coefficients) > 2 else 0.0
    return float(coefficients[1]), float(np.exp(coefficients[0])), beta, float(np.sqrt(np.mean(residual * residual)))


def default_decay_radii(field: ScalarField) -> np.ndarray:
    """[4h, decay_radius_max] 上大致等比的半径，取 h 的整数倍使轴上节点恰好落在球面上"""
    section = app_config.section("regularity_config")
    h = field.spacing
    r_max = float(section.get("decay_radius_max", DECAY_RADIUS_MAX))
    count = int(section.get("decay_radius_count", 8))
    if r_max < 4 * h - 1e-12:
        raise DomainError(f"h = {h:.4g} 时 [4h, {r_max}] 为空，无法做衰减拟合")
    steps = np.unique(np.floor(np.geomspace(4.0, r_max / h + 1e-9, count)))
    if steps.size < 2:
        raise DomainError(f"h = {h:.4g} 时 [4h, {r_max}] 内不足两个半径")
    return steps * h


def node_distances(field: ScalarField, center: Sequence[float]) -> np.ndarray:
    """各球内节点到 center 的距离，节点取偶延拓后两侧中较近的一个"""
    points = field.grid.coordinates(field.grid.node_ids)
    center = np.asarray(center, dtype=np.float64)
    mirrored = points.copy()
    mirrored[:, -1] = -mirrored[:, -1]
    return np.minimum(np.linalg.norm(points - center, axis=1), np.linalg.norm(mirrored - center, axis=1))


def ball_sup(field: ScalarField, center: Sequence[float], radius: float) -> float:
    """节点值上的 sup_{B_r(center)} |u|"""
    inside = node_distances(field, center) <= radius + 1e-12
    values = np.abs(field.node_values[inside])
    return float(values.max()) if values.size else 0.0


def decay_exponent(field: ScalarField, center: Optional[Sequence[float]] = None, radii: Optional[Sequence[float]] = None) -> DecayFit:
    """sup_{B_r}|u| ≈ C r^α 的对数拟合

    α̂ 是 log sup 对 log r 的最小二乘斜率；regularity_config.decay_correction 打开时
    另外给出 C r^α e^{β r} 拟合的 α 与 β 作参考。

    Args:
        field: 网格场
        center: 中心，通常取夹紧薄集上的点或 Π 上的点，默认原点
        radii: 半径，默认 default_decay_radii，须落在 [4h, 0.4]

    Returns:
        DecayFit
    """
    center = np.zeros(field.dimension) if center is None else np.asarray(center, dtype=np.float64)
    if center.shape != (field.dimension,):
        raise DomainError(f"中心 {center.tolist()} 的维数与场的维数 {field.dimension} 不一致")
    h = field.spacing
    radii = default_decay_radii(field) if radii is None else np.asarray(sorted(float(r) for r in radii))
    if radii[0] < 4 * h - 1e-12 or radii[-1] > DECAY_RADIUS_MAX + 1e-12:
        raise DomainError(f"衰减拟合的半径须落在 [{4 * h:.4g}, {DECAY_RADIUS_MAX}] 内: {radii.tolist()}")
    if np.linalg.norm(center) + radii[-1] > 1.0 + 1e-12:
        raise DomainError(f"B_{radii[-1]}({center.tolist()}) 不在单位球内")

    sups = np.array([ball_sup(field, center, r) for r in radii])
    if sups[-1] < DEGENERATE_H:
        logger.warning(f"场在 B_{radii[-1]}({center.tolist()}) 上恒为零，不做拟合")
        raise DegenerateFieldError(f"场在 B_{radii[-1]}({center.tolist()}) 上恒为零")
    keep = sups >= DEGENERATE_H
    if keep.sum() < 2:
        raise DegenerateFieldError(f"{center.tolist()} 附近只有 {int(keep.sum())} 个非零半径，无法拟合")
    corrected_alpha, correction = None, None
    if bool(app_config.section("regularity_config").get("decay_correction", True)) and keep.sum() >= 3:
        corrected_alpha, _, correction, _ = _log_fit(radii[keep], sups[keep], corrected=True)
    alpha, constant, _, residual = _log_fit(radii[keep], sups[keep])
    return DecayFit(
        center=tuple(center.tolist()),
        radii=radii[keep].tolist(),
        sups=sups[keep].tolist(),
        alpha_hat=alpha,
        constant=constant,
        fit_residual=residual,
        corrected_alpha=corrected_alpha,
        correction=correction,
    )


def local_boundedness_ratio(field: ScalarField, radius: float = 0.75) -> float:
    """sup_{B_radius}|u| / ‖u‖_{L²(B_1)}，局部有界性估计中常数的实测值"""
    norm = np.sqrt(ball_integral(lambda points: field.values_at(points) ** 2, np.zeros(field.dimension), 1.0, spacing=field.spacing))
    if norm < DEGENERATE_H:
        raise DegenerateFieldError("场的 L² 范数为零")
    return ball_sup(field, np.zeros(field.dimension), radius) / norm


def clamp_distance_decay(field: ScalarField, radius: float = 0.5, bins: Optional[int] = None) -> ClampDistanceFit:
    """|u(x)| 对 dist(x, {x_1 <= 0, x_n = 0}) 的上包络拟合，只用 B_radius 内的节点

    距离在 [h, radius] 上按对数等分分箱，每箱取 |u| 的最大值。
    """
    bins = int(bins or app_config.section("regularity_config").get("distance_bins", 12))
    grid = field.grid
    points = grid.coordinates(grid.node_ids)
    inside = np.linalg.norm(points, axis=1) <= radius + 1e-12
    points, values = points[inside], np.abs(field.node_values[inside])
    distance = np.hypot(np.maximum(points[:, 0], 0.0), points[:, -1])

    edges = np.geomspace(field.spacing, radius, bins + 1)
    which = np.digitize(distance, edges) - 1
    centers, envelope = [], []
    for k in range(bins):
        in_bin = which == k
        if in_bin.any() and values[in_bin].max() >= DEGENERATE_H:
            centers.append(np.sqrt(edges[k] * edges[k + 1]))
            envelope.append(float(values[in_bin].max()))
    if len(centers) < 2:
        raise DegenerateFieldError("夹紧薄集附近的非零分箱不足两个，无法拟合")
    beta, c0, _, residual = _log_fit(np.asarray(centers), np.asarray(envelope))
    return ClampDistanceFit(distances=centers, envelope=envelope, beta_hat=beta, c0=c0, fit_residual=residual)
