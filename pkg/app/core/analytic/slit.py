"""
裂缝区域上的齐次调和函数 û_κ = Re(x_1 + i|x_n|)^κ，κ = m - 1/2

n=3 时只依赖 (x_1, x_n)，沿 x_2 为柱状延拓。
"""

import numpy as np

from app.core.exceptions import DomainError
from app.core.geometry import GridSpec, ScalarField
from app.schemas.scenario import is_half_odd


def _check_kappa(kappa: float):
    if not is_half_odd(kappa):
        raise DomainError(f"kappa 必须为正的半奇数 m - 1/2，实际为 {kappa}")


def _polar(points: np.ndarray):
    x1 = points[..., 0]
    xn = points[..., -1]
    radius = np.hypot(x1, xn)
    # θ 用 |x_n| 计算，落在 [0, π]，裂缝上恰为 π
    theta = np.arctan2(np.abs(xn), x1)
    on_slit = (xn == 0) & (x1 <= 0)
    return x1, xn, radius, theta, on_slit


def slit_value(kappa: float, point) -> np.ndarray:
    """r^κ cos(κθ)，在裂缝 {x_1 <= 0, x_n = 0} 上严格取 0

    Args:
        kappa: 正的半奇数
        point: 形状 (n,) 或 (k, n) 的点

    Returns:
        标量或形状 (k,) 的数组
    """
    _check_kappa(kappa)
    points = np.asarray(point, dtype=np.float64)
    _, _, radius, theta, on_slit = _polar(points)
    value = np.where(on_slit, 0.0, radius**kappa * np.cos(kappa * theta))
    return float(value) if points.ndim == 1 else value


def slit_gradient(kappa: float, point) -> np.ndarray:
    """û_κ 的解析梯度，|∇û_κ|² = κ² r^{2κ-2}

    梯度在 (x_1, |x_n|) 平面内为 κ r^{κ-1} (cos((κ-1)θ), -sin((κ-1)θ))，
    x_n 分量再乘以 x_n 的符号。
    """
    _check_kappa(kappa)
    points = np.asarray(point, dtype=np.float64)
    _, xn, radius, theta, on_slit = _polar(points)
    if np.any(on_slit):
        raise DomainError("裂缝上梯度无定义")
    magnitude = kappa * radius ** (kappa - 1.0)
    result = np.zeros(points.shape, dtype=np.float64)
    result[..., 0] = magnitude * np.cos((kappa - 1.0) * theta)
    result[..., -1] = -np.where(xn < 0, -1.0, 1.0) * magnitude * np.sin((kappa - 1.0) * theta)
    return result


def sample_field(grid: GridSpec, function) -> ScalarField:
    """在网格节点上采样闭式函数"""
    return ScalarField.from_function(grid, function)


def slit_field(grid: GridSpec, kappa: float, scale: float = 1.0) -> ScalarField:
    """采样后的 scale * û_κ"""
    _check_kappa(kappa)
    return sample_field(grid, lambda points: scale * slit_value(kappa, points))
