"""
schemas/regularity.py
衰减指数与稳定性的测量结果
"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field


class PartSign(str, Enum):
    PLUS = "+"
    MINUS = "-"


class DecayFit(BaseModel):
    center: Tuple[float, ...] = Field(..., description="中心")
    radii: List[float] = Field(default_factory=list, description="参与拟合的半径")
    sups: List[float] = Field(default_factory=list, description="sup_{B_r} |u|（节点值）")
    alpha_hat: float = Field(..., description="log sup 对 log r 的最小二乘斜率")
    constant: float = Field(..., description="拟合得到的常数 C，sup ≈ C r^α")
    fit_residual: float = Field(..., description="对数拟合残差的均方根")
    corrected_alpha: Optional[float] = Field(default=None, description="带一阶修正 sup ≈ C r^α e^{β r} 的指数 α；未打开修正时为空")
    correction: Optional[float] = Field(default=None, description="一阶修正系数 β；未打开修正时为空")


class StabilityReport(BaseModel):
    interior_gap: float = Field(..., description="sup_{|x| <= radius} |u_1 - u_2|")
    boundary_gap: float = Field(..., description="∫_{∂B_1} (g_1 - g_2)²")
    ratio: float = Field(..., description="interior_gap / boundary_gap，边界数据相同时为 0")
    radius: float = Field(default=0.5, description="内部区域的半径")


class ClampDistanceFit(BaseModel):
    """|u(x)| <= C_0 dist(x, 夹紧薄集)^β 的上包络拟合"""

    distances: List[float] = Field(default_factory=list, description="各距离分箱的代表距离")
    envelope: List[float] = Field(default_factory=list, description="各分箱内 |u| 的最大值")
    beta_hat: float = Field(..., description="拟合指数 β̂")
    c0: float = Field(..., description="拟合常数 C_0")
    fit_residual: float = Field(..., description="对数拟合残差的均方根")
