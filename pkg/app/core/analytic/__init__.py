from typing import Dict, Any
from abc import ABC, abstractmethod

import numpy as np


class BoundaryDatum(ABC):
    """球面 Dirichlet 数据提供者抽象基类"""

    def __init__(self, provider_config: Dict[str, Any], provider_settings: Dict[str, Any]):
        """
        初始化边界数据提供者

        Args:
            provider_config: 提供者配置（场景参数，含 scale 与 offset）
            provider_settings: 全局设置
        """
        self.provider_config = provider_config
        self.provider_settings = provider_settings
        self.provider_name = provider_config.get("type", "unknown")
        self.scale = float(provider_config.get("scale", 1.0))
        self.offset = float(provider_config.get("offset", 0.0))

    @abstractmethod
    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """
        未加仿射修正的原始数据 g

        Args:
            points: 形状 (k, n) 的单位球面上的点

        Returns:
            形状 (k,) 的数据值
        """
        pass

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return self.scale * self.evaluate(points) + self.offset


from .slit import sample_field, slit_field, slit_gradient, slit_value
from .scenario import scenario_boundary, scenario_datum, thin_sphere_directions, validate_scenario

__all__ = [
    "BoundaryDatum",
    "sample_field",
    "scenario_boundary",
    "scenario_datum",
    "slit_field",
    "slit_gradient",
    "slit_value",
    "thin_sphere_directions",
    "validate_scenario",
]
