"""
实验室统一的异常类型
"""

from typing import Any, Optional


class LabError(Exception):
    """所有实验室异常的基类"""


class GridError(LabError, ValueError):
    """网格参数不合法（维数、步长）"""


class DomainError(LabError, ValueError):
    """点或球超出计算区域，或中心不满足定理假设"""


class InadmissibleScenarioError(LabError, ValueError):
    """边界数据不属于约束集 K0(g)"""


class SolverDivergedError(LabError):
    """投影松弛在最大迭代次数内未收敛，携带部分结果"""

    def __init__(self, message: str, field: Any = None, report: Any = None):
        super().__init__(message)
        self.field = field
        self.report = report


class OracleError(LabError):
    """枚举预言机无法求解（节点过多或没有可行模式）"""


class DegenerateFieldError(LabError):
    """场在需要归一化或拟合的区域上恒为零"""


class FieldFormatError(LabError, ValueError):
    """场文件头不匹配或文件被截断"""


class ConfigError(LabError):
    """运行配置解析失败，line 为出错的行号"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"第 {line} 行: " if line is not None else ""
        super().__init__(prefix + message)


class NondeterminismError(LabError):
    """相同边界数据的两次求解结果不一致"""
