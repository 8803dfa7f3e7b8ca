from typing import Tuple

import numpy as np

from app.core.blowup import KappaEstimator


def _affine_fit(x: np.ndarray, y: np.ndarray) -> Tuple[float, float, float]:
    """最小二乘直线 y = slope * x + intercept，返回 (slope, intercept, 残差均方根)"""
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    return float(slope), float(intercept), float(np.sqrt(np.mean(residual * residual)))


class NExtrapolationEstimator(KappaEstimator):
    """N(r) 在窗口内按 r 的仿射函数拟合，外推到 r = 0 的截距作为 κ̂"""

    def estimate(self, radii, N, H, dimension):
        _, intercept, residual = _affine_fit(np.asarray(radii), np.asarray(N))
        return intercept, residual


class LogSlopeEstimator(KappaEstimator):
    """齐次函数满足 H(r) ∝ r^{n-1+2κ}，由 log H 对 log r 的斜率 s 得 κ̂ = (s - (n-1)) / 2"""

    def estimate(self, radii, N, H, dimension):
        slope, _, residual = _affine_fit(np.log(np.asarray(radii)), np.log(np.asarray(H)))
        return (slope - (dimension - 1)) / 2.0, residual
