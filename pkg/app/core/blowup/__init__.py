from typing import Dict, Any, Tuple
from abc import ABC, abstractmethod

import numpy as np


class KappaEstimator(ABC):
    """从窗口内的 N(r)、H(r) 估计爆破齐次次数 κ 的抽象基类"""

    def __init__(self, provider_config: Dict[str, Any], provider_settings: Dict[str, Any]):
        """
        初始化估计器

        Args:
            provider_config: 估计器配置
            provider_settings: 全局设置
        """
        self.provider_config = provider_config
        self.provider_settings = provider_settings
        self.provider_name = provider_config.get("type", "unknown")

    @abstractmethod
    def estimate(self, radii: np.ndarray, N: np.ndarray, H: np.ndarray, dimension: int) -> Tuple[float, float]:
        """
        估计 κ

        Args:
            radii: 窗口内的半径
            N: 各半径上的频率
            H: 各半径上的 ∮u²
            dimension: 空间维数

        Returns:
            (κ̂, 拟合残差的均方根)
        """
        pass


from .rescale import BlowupField, homogeneity_deviation, rescale
from .homogeneity import default_window, estimate_homogeneity

__all__ = [
    "BlowupField",
    "KappaEstimator",
    "default_window",
    "estimate_homogeneity",
    "homogeneity_deviation",
    "rescale",
]
