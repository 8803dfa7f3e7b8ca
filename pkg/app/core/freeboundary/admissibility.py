import math
from typing import Optional, Union

from app import app_config
from app.schemas.freeboundary import AdmissibilityVerdict, PointClass

# 所有类型都要满足的下界 κ >= 1/2
KAPPA_FLOOR = 0.5
REGULAR_KAPPA = 1.5


def nearest_half_odd(kappa: float) -> float:
    """最近的 m - 1/2（m >= 1）"""
    return max(1, math.floor(kappa + 1.0)) - 0.5


def nearest_planar_interior(kappa: float) -> float:
    """平面情形内部自由边界的容许值 3/2, 2, 7/2, 4, ..., 2m - 1/2, 2m 中最近的一个"""
    candidates = [REGULAR_KAPPA] + [value for m in range(1, int(kappa // 2) + 3) for value in (2.0 * m - 0.5, 2.0 * m)]
    return min(candidates, key=lambda value: (abs(value - kappa), value))


def admissibility_check(
    point_class: Union[PointClass, str], kappa_hat: float, tolerance: Optional[float] = None
) -> AdmissibilityVerdict:
    """按点的类型检查 κ̂ 是否为容许的频率

    - CONTACT、INTERIOR_FB：κ̂ >= 3/2 - tolerance
    - NON_CONTACT：κ̂ 到最近 m - 1/2 的距离 <= tolerance
    - 所有类型还要求 κ̂ >= 1/2 - tolerance
    - planar_interior_list 打开时，INTERIOR_FB 还须靠近 3/2, 2, 7/2, 4, ...
    """
    section = app_config.section("freeboundary_config")
    tolerance = float(section.get("admissibility_tolerance", 0.1)) if tolerance is None else float(tolerance)
    try:
        point_class = PointClass(point_class)
    except ValueError:
        raise ValueError(f"未知的点类型: {point_class}") from None

    nearest = None
    if point_class == PointClass.NON_CONTACT:
        nearest = nearest_half_odd(kappa_hat)
        margin = abs(kappa_hat - nearest)
        passed = margin <= tolerance
    else:
        margin = kappa_hat - REGULAR_KAPPA
        passed = margin >= -tolerance
        if point_class == PointClass.INTERIOR_FB and section.get("planar_interior_list", False):
            nearest = nearest_planar_interior(kappa_hat)
            passed = passed and abs(kappa_hat - nearest) <= tolerance
    passed = passed and kappa_hat >= KAPPA_FLOOR - tolerance
    return AdmissibilityVerdict(passed=passed, margin=margin, nearest=nearest, tolerance=tolerance)
