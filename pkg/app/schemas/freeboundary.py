"""
schemas/freeboundary.py
薄集分解与自由边界点的分类
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class ContactFlag(str, Enum):
    CONTACT = "CONTACT"
    NON_CONTACT = "NON_CONTACT"
    NOT_ON_GAMMA = "NOT_ON_GAMMA"


class PointClass(str, Enum):
    CONTACT = "CONTACT"
    NON_CONTACT = "NON_CONTACT"
    INTERIOR_FB = "INTERIOR_FB"


class ThinDecomposition(BaseModel):
    """薄节点按 u <= τ_contact 划分，全部以节点编号（升序）记录"""

    tau_contact: float = Field(..., description="接触阈值")
    rho_near: float = Field(..., description="判定接触点的距离")
    coincidence: List[int] = Field(default_factory=list, description="Λ：u <= τ_contact 的薄节点")
    positivity: List[int] = Field(default_factory=list, description="Ω：u > τ_contact 的薄节点")
    free_boundary: List[int] = Field(default_factory=list, description="Γ：在薄集内有 Ω 邻居的 Λ 节点")
    fixed_boundary: List[int] = Field(default_factory=list, description="Π = {x_1 = 0, x_n = 0} 上的薄节点")
    contact_flags: Dict[int, ContactFlag] = Field(default_factory=dict, description="每个 Π 节点的接触标记")


class AdmissibilityVerdict(BaseModel):
    passed: bool = Field(..., description="是否通过")
    margin: float = Field(..., description="CONTACT / INTERIOR_FB 为 κ̂ - 3/2；NON_CONTACT 为到最近 m - 1/2 的距离")
    nearest: Optional[float] = Field(default=None, description="NON_CONTACT 时最近的容许值")
    tolerance: float = Field(..., description="判定所用的容差")


class ClassifiedPoint(BaseModel):
    node: int = Field(..., description="节点编号")
    location: Tuple[float, ...] = Field(..., description="节点坐标")
    point_class: PointClass = Field(..., description="点的类型")
    kappa_hat: Optional[float] = Field(default=None, description="爆破齐次次数的估计")
    verdict: Optional[AdmissibilityVerdict] = Field(default=None, description="可容许性判定，未解析时为空")
    resolved: bool = Field(default=True, description="κ̂ 是否估计成功")
    note: str = Field(default="", description="未解析时的原因")
