from typing import Optional

import numpy as np

from app import logger
from app.core.analytic import BoundaryDatum
from app.core.analytic.datum_factory import DatumFactory
from app.core.analytic.datum_strategy import TableDatum
from app.core.exceptions import DomainError, InadmissibleScenarioError
from app.core.geometry import GridSpec, NodeClass
from app.schemas.scenario import Scenario

_TOLERANCE = 1e-12


def thin_sphere_directions(dimension: int, count: int = 64) -> np.ndarray:
    """单位球面与薄超平面的交线 {|x| = 1, x_n = 0} 上的采样方向"""
    if dimension == 2:
        return np.array([[1.0, 0.0], [-1.0, 0.0]])
    angles = (np.arange(count) + 0.5) * (2.0 * np.pi / count)
    return np.stack([np.cos(angles), np.sin(angles), np.zeros(count)], axis=1)


def _check_table(datum: TableDatum, scenario: Scenario):
    free_side, clamped_side = datum.endpoint_values
    if free_side < -_TOLERANCE:
        raise InadmissibleScenarioError(f"TABLE 场景 {scenario.label} 在 θ=0 处为负: {free_side:.6g}")
    if abs(clamped_side) > _TOLERANCE:
        raise InadmissibleScenarioError(f"TABLE 场景 {scenario.label} 在夹紧一侧 θ=π 处不为 0: {clamped_side:.6g}")


def scenario_datum(scenario: Scenario) -> BoundaryDatum:
    """创建场景的边界数据提供者；TABLE 场景在创建时检查端点可容许性"""
    datum = DatumFactory.create_provider(scenario)
    if isinstance(datum, TableDatum):
        _check_table(datum, scenario)
    return datum


def scenario_boundary(scenario: Scenario, sphere_point) -> np.ndarray:
    """单位球面上的边界数据 g(x)

    Args:
        scenario: 场景描述
        sphere_point: 形状 (n,) 或 (k, n) 的单位向量

    Returns:
        标量或形状 (k,) 的数组
    """
    points = np.asarray(sphere_point, dtype=np.float64)
    batch = np.atleast_2d(points)
    if batch.shape[1] != scenario.dimension:
        raise DomainError(f"点的维数 {batch.shape[1]} 与场景维数 {scenario.dimension} 不一致")
    norms = np.linalg.norm(batch, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-9):
        raise DomainError(f"边界数据只在单位球面上定义: |x| ∈ [{norms.min():.6g}, {norms.max():.6g}]")
    values = scenario_datum(scenario)(batch)
    return float(values[0]) if points.ndim == 1 else values


def validate_scenario(scenario: Scenario, grid: Optional[GridSpec] = None) -> BoundaryDatum:
    """检查边界数据与 K0(g) 相容：球面与自由薄集相交处 g >= 0

    给定网格时检查该网格上位于薄超平面的 SPHERE 节点（径向投影后），
    否则检查交线上的固定采样方向。

    Returns:
        通过检查的边界数据提供者
    """
    if grid is not None and grid.dimension != scenario.dimension:
        raise InadmissibleScenarioError(f"网格维数 {grid.dimension} 与场景维数 {scenario.dimension} 不一致")
    datum = scenario_datum(scenario)

    if grid is not None:
        sphere_ids = grid.ids_of_class(NodeClass.SPHERE)
        on_thin = grid.integer_coordinates(sphere_ids)[:, -1] == 0
        directions = grid.sphere_directions[on_thin]
    else:
        directions = thin_sphere_directions(scenario.dimension)
    directions = directions[directions[:, 0] > 0]

    values = datum(directions)
    if values.size and values.min() < -_TOLERANCE:
        worst = directions[int(np.argmin(values))]
        logger.error(f"场景 {scenario.label} 在 {worst.tolist()} 处的边界数据为负: {values.min():.6g}")
        raise InadmissibleScenarioError(f"场景 {scenario.label} 在自由薄集端点处的边界数据为负: {values.min():.6g}")
    return datum
