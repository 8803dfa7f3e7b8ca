from typing import Union

import numpy as np

from app.core.exceptions import GridError
from app.core.geometry import NodeClass, ScalarField
from app.schemas.regularity import PartSign


def _part(values: np.ndarray, sign: PartSign) -> np.ndarray:
    return np.maximum(values, 0.0) if sign == PartSign.PLUS else np.maximum(-values, 0.0)


def subharmonicity_check(field: ScalarField, sign: Union[PartSign, str]) -> float:
    """u₊ 或 u₋ 的离散次调和性违背量

    对所有非 SPHERE 节点取 (部分)(节点) - 偶延拓模板上 (部分) 的邻居平均，
    返回其最大值与 0 中的较大者。
    """
    sign = PartSign(sign)
    grid = field.grid
    part = _part(field.flat, sign)
    ids = grid.node_ids[grid.classes.ravel()[grid.node_ids] != NodeClass.SPHERE]
    violation = part[ids] - part[grid.stencil[ids]].mean(axis=1)
    return float(max(0.0, violation.max())) if ids.size else 0.0


def difference_subharmonicity(field_1: ScalarField, field_2: ScalarField, sign: Union[PartSign, str]) -> float:
    """(u_2 - u_1)± 的次调和性违背量，两个场须在同一网格上"""
    if field_1.grid.shape != field_2.grid.shape or field_1.dimension != field_2.dimension:
        raise GridError("两个场不在同一网格上")
    return subharmonicity_check(ScalarField(field_1.grid, field_2.values - field_1.values), sign)
