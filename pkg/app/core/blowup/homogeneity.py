from typing import Optional, Sequence, Tuple

import numpy as np

from app import app_config, logger
from app.config.constant import DEGENERATE_H
from app.core.blowup.estimator_factory import EstimatorFactory
from app.core.exceptions import DegenerateFieldError, DomainError
from app.core.frequency import check_center, dirichlet_integrals, height
from app.core.geometry import FieldLike
from app.schemas.blowup import EstimatorKind, HomogeneityEstimate

_EPS = 1e-12
_MIN_RADII = 4


def validity_range(field: FieldLike, x0: np.ndarray) -> Tuple[float, float]:
    """窗口半径的有效范围 [4h, 1 - 3h - |x0|]"""
    h = field.spacing
    return 4.0 * h, 1.0 - 3.0 * h - float(np.linalg.norm(x0))


def default_window(field: FieldLike, x0: Sequence[float]) -> Tuple[float, float]:
    """默认窗口 [6h, min(0.3, 1 - 3h - |x0|)]"""
    section = app_config.section("blowup_config")
    x0 = np.asarray(x0, dtype=np.float64)
    _, upper = validity_range(field, x0)
    low = float(section.get("window_low_factor", 6.0)) * field.spacing
    return low, min(float(section.get("window_high", 0.3)), upper)


def estimate_homogeneity(
    field: FieldLike,
    x0: Sequence[float],
    radius_window: Optional[Tuple[float, float]] = None,
    count: Optional[int] = None,
) -> HomogeneityEstimate:
    """估计 x0 处爆破的齐次次数 κ = N(0+)

    在窗口内等距取半径计算 N(r) 与 H(r)，主估计器由
    blowup_config.estimator.active 决定，另一个作为交叉检验；
    两者相差超过 disagreement_threshold 时标记为低置信度。

    Args:
        field: 网格场
        x0: 薄超平面上 x_1 >= 0 的点
        radius_window: (r_lo, r_hi)，默认 default_window
        count: 窗口内的半径个数，默认 blowup_config.radius_count

    Returns:
        HomogeneityEstimate
    """
    x0 = check_center(x0, field.dimension)
    section = app_config.section("blowup_config")
    low, high = radius_window or default_window(field, x0)
    valid_low, valid_high = validity_range(field, x0)
    if low < valid_low - _EPS or high > valid_high + _EPS or not low < high:
        raise DomainError(f"半径窗口 [{low:.6g}, {high:.6g}] 超出有效范围 [{valid_low:.6g}, {valid_high:.6g}]")
    count = int(count or section.get("radius_count", 12))
    if count < _MIN_RADII:
        raise DomainError(f"窗口内至少需要 {_MIN_RADII} 个半径，实际为 {count}")

    radii = np.linspace(low, high, count)
    D = dirichlet_integrals(field, x0, radii)
    H = np.array([height(field, x0, r) for r in radii])
    keep = H > DEGENERATE_H
    if keep.sum() < _MIN_RADII:
        raise DegenerateFieldError(f"{x0.tolist()} 附近的场几乎为零，窗口内只有 {int(keep.sum())} 个可用半径")
    radii, D, H = radii[keep], D[keep], H[keep]
    N = radii * D / H

    primary_kind = EstimatorFactory.active_kind()
    secondary_kind = (
        EstimatorKind.LOG_SLOPE if primary_kind == EstimatorKind.N_EXTRAPOLATION else EstimatorKind.N_EXTRAPOLATION
    )
    kappa, residual = EstimatorFactory.create_provider(primary_kind).estimate(radii, N, H, field.dimension)
    secondary, secondary_residual = EstimatorFactory.create_provider(secondary_kind).estimate(
        radii, N, H, field.dimension
    )

    threshold = float(section.get("disagreement_threshold", 0.15))
    low_confidence = abs(kappa - secondary) > threshold
    if low_confidence:
        logger.warning(
            f"{x0.tolist()} 处两种 κ 估计不一致: {primary_kind.value}={kappa:.4f}, {secondary_kind.value}={secondary:.4f}"
        )
    logger.debug(f"{x0.tolist()} 处 κ̂ = {kappa:.4f}（{primary_kind.value}），窗口 [{low:.4g}, {high:.4g}]")
    return HomogeneityEstimate(
        center=tuple(x0.tolist()),
        kappa_hat=kappa,
        method=primary_kind,
        fit_residual=residual,
        window=(float(low), float(high)),
        radii=radii.tolist(),
        N=N.tolist(),
        secondary_kappa=secondary,
        secondary_method=secondary_kind,
        secondary_residual=secondary_residual,
        low_confidence=low_confidence,
    )
