from typing import Dict, Any

import numpy as np

from app.core.analytic import BoundaryDatum
from app.core.analytic.slit import slit_value


class SlitTraceDatum(BoundaryDatum):
    """û_κ 在球面上的迹"""

    def __init__(self, provider_config: Dict[str, Any], provider_settings: Dict[str, Any]):
        super().__init__(provider_config, provider_settings)
        self.kappa = float(provider_config["kappa"])

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return slit_value(self.kappa, points)


class ConstantDatum(BoundaryDatum):

    def __init__(self, provider_config: Dict[str, Any], provider_settings: Dict[str, Any]):
        super().__init__(provider_config, provider_settings)
        self.value = float(provider_config["value"])

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return np.full(points.shape[0], self.value)


class ShiftedSlitDatum(BoundaryDatum):
    """沿 x_1 平移 δ 的 û_κ，即 û_κ(x_1 - δ, x_n)"""

    def __init__(self, provider_config: Dict[str, Any], provider_settings: Dict[str, Any]):
        super().__init__(provider_config, provider_settings)
        self.kappa = float(provider_config["kappa"])
        self.shift = float(provider_config["shift"])

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        shifted = points.copy()
        shifted[:, 0] -= self.shift
        return slit_value(self.kappa, shifted)


class TableDatum(BoundaryDatum):
    """在 (x_1, |x_n|) 平面内按角度 θ ∈ [0, π] 线性插值的采样表，n=3 时为柱状"""

    def __init__(self, provider_config: Dict[str, Any], provider_settings: Dict[str, Any]):
        super().__init__(provider_config, provider_settings)
        self.table = np.asarray(provider_config["table"], dtype=np.float64)
        self.angles = np.linspace(0.0, np.pi, self.table.size)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        theta = np.arctan2(np.abs(points[:, -1]), points[:, 0])
        return np.interp(theta, self.angles, self.table)

    @property
    def endpoint_values(self) -> tuple:
        """θ = 0（自由薄集一侧）与 θ = π（夹紧一侧）处加仿射修正后的值"""
        return (self.scale * self.table[0] + self.offset, self.scale * self.table[-1] + self.offset)
