"""
schemas/run.py
一次端到端运行的配置与结果汇总
"""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from app.schemas.blowup import HomogeneityEstimate
from app.schemas.freeboundary import ClassifiedPoint
from app.schemas.frequency import FrequencyProfile, MonotonicityVerdict
from app.schemas.regularity import DecayFit
from app.schemas.scenario import Scenario
from app.schemas.solver import SolveReport, SolverParams


class AnalysisRequest(BaseModel):
    """分析阶段要做的事情，所有中心都在薄超平面 x_n = 0 上"""

    frequency_centers: List[Tuple[float, ...]] = Field(default_factory=list, description="频率剖面的中心，x_1 >= 0")
    frequency_radii: Optional[List[float]] = Field(default=None, description="频率剖面的半径，为空时自动选取")
    monotonicity_tolerance: Optional[float] = Field(default=None, description="单调性容差，为空时按 1/h 查表")
    blowup_points: List[Tuple[float, ...]] = Field(default_factory=list, description="额外估计 κ̂ 的点，x_1 >= 0")
    classification: bool = Field(default=True, description="是否对固定边界与自由边界点分类")
    regularity_centers: List[Tuple[float, ...]] = Field(default_factory=list, description="衰减指数的中心")
    identities: bool = Field(default=True, description="是否判定两个恒等式与 Rellich 余量")
    phi: bool = Field(default=False, description="是否检查半球带权能量 φ(r) 的单调性（中心为原点）")
    perturbations: int = Field(default=0, ge=0, description="能量极小性的随机扰动次数，0 表示不检查")

    @field_validator("frequency_centers", "blowup_points", "regularity_centers")
    def validate_thin(cls, value):
        for center in value:
            if abs(center[-1]) > 1e-12:
                raise ValueError(f"中心必须在薄超平面 x_n = 0 上: {list(center)}")
        return value

    @field_validator("frequency_centers", "blowup_points")
    def validate_half_plane(cls, value):
        for center in value:
            if center[0] < 0:
                raise ValueError(f"中心必须满足 x_1 >= 0: {list(center)}")
        return value

    @field_validator("frequency_radii")
    def validate_radii(cls, value):
        if value is not None and any(b <= a for a, b in zip(value[:-1], value[1:])):
            raise ValueError("frequency_radii 必须严格递增")
        return value


class RunConfig(BaseModel):
    name: str = Field(..., description="运行名称，用作输出子目录")
    description: str = Field(default="", description="一行说明")
    dimension: int = Field(..., description="空间维数 2 或 3")
    h: str = Field(..., description="网格步长，形如 1/64")
    inverse_h: int = Field(..., description="1/h")
    scenario: Scenario = Field(..., description="边界数据场景")
    solver: SolverParams = Field(default_factory=SolverParams, description="求解参数")
    analysis: AnalysisRequest = Field(default_factory=AnalysisRequest, description="分析请求")
    output_dir: str = Field(default="out", description="输出目录")
    field_path: Optional[str] = Field(default=None, description="verify 读取的场文件，默认 <output_dir>/field.txt")
    seed: int = Field(default=0, description="扰动检查的随机种子")

    @model_validator(mode="after")
    def validate_dimensions(self):
        if self.scenario.dimension != self.dimension:
            raise ValueError(f"场景维数 {self.scenario.dimension} 与网格维数 {self.dimension} 不一致")
        for center in (
            self.analysis.frequency_centers + self.analysis.blowup_points + self.analysis.regularity_centers
        ):
            if len(center) != self.dimension:
                raise ValueError(f"中心 {list(center)} 的维数与 {self.dimension} 不一致")
        if self.analysis.phi and not any(not any(center) for center in self.analysis.frequency_centers):
            raise ValueError("phi = true 时 frequency_centers 必须包含原点")
        return self


class Verdict(BaseModel):
    """一项判定：margin >= 0 即通过"""

    name: str = Field(..., description="判定名称")
    passed: bool = Field(..., description="是否通过")
    margin: float = Field(..., description="到判定阈值的余量")
    detail: str = Field(default="", description="说明")


class RunSummary(BaseModel):
    name: str = Field(..., description="运行名称")
    scenario: Scenario = Field(..., description="场景回显")
    dimension: int = Field(..., description="空间维数")
    inverse_h: int = Field(..., description="1/h")
    solve: Optional[SolveReport] = Field(default=None, description="求解报告，verify 时为空")
    frequency: Dict[str, FrequencyProfile] = Field(default_factory=dict, description="频率剖面，键为 c0、c1 ...")
    monotonicity: Dict[str, MonotonicityVerdict] = Field(default_factory=dict, description="各中心的单调性")
    blowup: List[HomogeneityEstimate] = Field(default_factory=list, description="κ̂ 估计")
    classification: List[ClassifiedPoint] = Field(default_factory=list, description="点分类")
    decomposition: Dict[str, int] = Field(default_factory=dict, description="Λ、Ω、Γ、Π 的节点数")
    decay: List[DecayFit] = Field(default_factory=list, description="衰减指数")
    subharmonicity: Dict[str, float] = Field(default_factory=dict, description="u₊、u₋ 的次调和性违背量")
    energy_gap: Optional[float] = Field(default=None, description="随机扰动下的最小能量增量")
    verdicts: List[Verdict] = Field(default_factory=list, description="判定汇总")

    @property
    def passed(self) -> bool:
        return all(verdict.passed for verdict in self.verdicts)
