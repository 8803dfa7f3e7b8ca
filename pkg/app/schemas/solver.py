"""
schemas/solver.py
投影松弛求解器的参数与报告
"""

from pydantic import BaseModel, Field

from app import app_config


class SolverParams(BaseModel):
    omega: float = Field(default=1.8, ge=1.0, lt=2.0, description="超松弛因子 ω ∈ [1, 2)")
    tolerance: float = Field(default=1e-10, gt=0, description="收敛容差 τ_solve（单次扫描的最大节点更新量）")
    max_iterations: int = Field(default=200000, gt=0, description="最大扫描次数")

    @classmethod
    def from_config(cls, **overrides) -> "SolverParams":
        """从仓库配置 solver_config 读取默认值"""
        section = app_config.section("solver_config")
        values = {key: section[key] for key in ("omega", "tolerance", "max_iterations") if key in section}
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    @property
    def activity_threshold(self) -> float:
        """诊断中区分接触与脱离的阈值"""
        return float(app_config.section("solver_config").get("activity_factor", 10.0)) * self.tolerance


class ComplementarityResidual(BaseModel):
    """自由薄集上 Signorini 互补条件的三项最大违背量"""

    sign: float = Field(..., description="max max(0, -u)")
    flux: float = Field(..., description="脱离节点（u > 阈值）上 max max(0, ∂_n u)")
    product: float = Field(..., description="max |u · ∂_n u|")

    @property
    def worst(self) -> float:
        return max(self.sign, self.flux, self.product)


class SolveReport(BaseModel):
    iterations: int = Field(..., description="实际扫描次数")
    max_update: float = Field(..., description="最后一次扫描的最大节点更新量")
    energy: float = Field(..., description="离散 Dirichlet 能量")
    complementarity: float = Field(..., description="最大互补违背量")
    converged: bool = Field(default=True, description="是否在最大扫描次数内收敛")
