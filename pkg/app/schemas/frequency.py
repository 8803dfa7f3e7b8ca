"""
schemas/frequency.py
频率函数及其单调性判定
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field


class FrequencyProfile(BaseModel):
    """一个中心处各半径上的 D、H、N、φ 与三个微分恒等式的残差"""

    center: Tuple[float, ...] = Field(..., description="薄超平面上的中心，x_1 >= 0")
    radii: List[float] = Field(default_factory=list, description="严格递增的半径")
    D: List[float] = Field(default_factory=list, description="∫_{B_r} |∇u|²")
    H: List[float] = Field(default_factory=list, description="∫_{∂B_r} u²")
    N: List[float] = Field(default_factory=list, description="Almgren 频率 r D / H")
    phi: List[float] = Field(default_factory=list, description="半球带权能量 φ(r)")
    res_id1: List[float] = Field(default_factory=list, description="第一恒等式的相对残差")
    res_id2: List[float] = Field(default_factory=list, description="第二恒等式的相对残差（无法取差分时为 NaN）")
    rellich_slack: List[float] = Field(default_factory=list, description="Rellich 型不等式的左端减右端")
    dropped: List[float] = Field(default_factory=list, description="因 H 退化被丢弃的半径")

    def rows(self) -> List[Tuple[float, ...]]:
        """按 CSV 列顺序 r, D, H, N, phi, res_id1, res_id2, rellich_slack 排列"""
        return list(zip(self.radii, self.D, self.H, self.N, self.phi, self.res_id1, self.res_id2, self.rellich_slack))


class MonotonicityVerdict(BaseModel):
    monotone: bool = Field(..., description="δ <= 容差")
    delta: float = Field(..., description="相邻半径上 N(r_i) - N(r_{i+1}) 的最大值（不小于 0）")
    location: Optional[Tuple[float, float]] = Field(default=None, description="最坏违背发生的半径对")
    tolerance: float = Field(..., description="判定所用的容差")
