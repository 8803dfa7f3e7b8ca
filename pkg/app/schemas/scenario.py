"""
schemas/scenario.py
边界数据场景的描述
"""

from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def is_half_odd(kappa: float) -> bool:
    """kappa 是否为 m - 1/2（m >= 1）"""
    doubled = 2.0 * kappa
    return kappa > 0 and abs(doubled - round(doubled)) < 1e-12 and round(doubled) % 2 == 1


class ScenarioKind(str, Enum):
    SLIT_TRACE = "SLIT_TRACE"
    CONSTANT = "CONSTANT"
    SHIFTED_SLIT = "SHIFTED_SLIT"
    TABLE = "TABLE"


class Scenario(BaseModel):
    """球面上的 Dirichlet 数据 g，最终取值为 scale * g + offset"""

    model_config = ConfigDict(frozen=True)

    name: str = Field(default="", description="场景名称，仅用于报告")
    kind: ScenarioKind = Field(..., description="边界数据类型")
    dimension: int = Field(default=2, description="空间维数")
    kappa: Optional[float] = Field(default=None, description="SLIT_TRACE / SHIFTED_SLIT 的齐次次数 m - 1/2")
    value: Optional[float] = Field(default=None, description="CONSTANT 的常数 c")
    shift: Optional[float] = Field(default=None, description="SHIFTED_SLIT 沿 x_1 的平移量 δ")
    table: Optional[Tuple[float, ...]] = Field(
        default=None, description="TABLE：在 (x_1, |x_n|) 平面内 θ ∈ [0, π] 等距采样的边界值"
    )
    scale: float = Field(default=1.0, gt=0, description="正的缩放系数")
    offset: float = Field(default=0.0, description="加在数据上的常数")

    @field_validator("dimension")
    def validate_dimension(cls, value):
        if value not in (2, 3):
            raise ValueError(f"维数必须为 2 或 3，实际为 {value}")
        return value

    @field_validator("kappa")
    def validate_kappa(cls, value):
        if value is not None and not is_half_odd(value):
            raise ValueError(f"kappa 必须为正的半奇数 m - 1/2，实际为 {value}")
        return value

    @model_validator(mode="after")
    def validate_parameters(self):
        required = {
            ScenarioKind.SLIT_TRACE: ("kappa",),
            ScenarioKind.CONSTANT: ("value",),
            ScenarioKind.SHIFTED_SLIT: ("kappa", "shift"),
            ScenarioKind.TABLE: ("table",),
        }[self.kind]
        missing = [key for key in required if getattr(self, key) is None]
        if missing:
            raise ValueError(f"{self.kind.value} 场景缺少参数: {', '.join(missing)}")
        if self.kind == ScenarioKind.TABLE and len(self.table) < 2:
            raise ValueError("TABLE 场景至少需要两个采样值")
        return self

    @property
    def label(self) -> str:
        """形如 SLIT_TRACE(1.5) 的简短描述"""
        if self.kind == ScenarioKind.SLIT_TRACE:
            body = f"{self.kind.value}({self.kappa:g})"
        elif self.kind == ScenarioKind.CONSTANT:
            body = f"{self.kind.value}({self.value:g})"
        elif self.kind == ScenarioKind.SHIFTED_SLIT:
            body = f"{self.kind.value}({self.kappa:g}, {self.shift:g})"
        else:
            body = f"{self.kind.value}[{len(self.table)}]"
        if self.scale != 1.0:
            body = f"{self.scale:g}*{body}"
        if self.offset != 0.0:
            body = f"{body}{self.offset:+g}"
        return body

    # 用于简化构造
    @classmethod
    def slit_trace(cls, kappa: float, dimension: int = 2, **kwargs) -> "Scenario":
        return cls(kind=ScenarioKind.SLIT_TRACE, kappa=kappa, dimension=dimension, **kwargs)

    @classmethod
    def constant(cls, value: float, dimension: int = 2, **kwargs) -> "Scenario":
        return cls(kind=ScenarioKind.CONSTANT, value=value, dimension=dimension, **kwargs)

    @classmethod
    def shifted_slit(cls, kappa: float, shift: float, dimension: int = 2, **kwargs) -> "Scenario":
        return cls(kind=ScenarioKind.SHIFTED_SLIT, kappa=kappa, shift=shift, dimension=dimension, **kwargs)

    @classmethod
    def tabulated(cls, values, dimension: int = 2, **kwargs) -> "Scenario":
        return cls(kind=ScenarioKind.TABLE, table=tuple(float(v) for v in values), dimension=dimension, **kwargs)
