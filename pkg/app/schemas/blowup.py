"""
schemas/blowup.py
爆破齐次次数的估计结果
"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field


class EstimatorKind(str, Enum):
    N_EXTRAPOLATION = "n_extrapolation"
    LOG_SLOPE = "log_slope"


class HomogeneityEstimate(BaseModel):
    center: Tuple[float, ...] = Field(..., description="爆破中心 x_0")
    kappa_hat: float = Field(..., description="主估计器给出的 κ̂")
    method: EstimatorKind = Field(..., description="主估计器")
    fit_residual: float = Field(..., description="主估计器拟合残差的均方根")
    window: Tuple[float, float] = Field(..., description="使用的半径窗口")
    radii: List[float] = Field(default_factory=list, description="窗口内实际使用的半径")
    N: List[float] = Field(default_factory=list, description="各半径上的频率 N(r)")
    secondary_kappa: Optional[float] = Field(default=None, description="次估计器给出的 κ̂")
    secondary_method: Optional[EstimatorKind] = Field(default=None, description="次估计器")
    secondary_residual: Optional[float] = Field(default=None, description="次估计器拟合残差的均方根")
    low_confidence: bool = Field(default=False, description="两种估计相差超过阈值")
