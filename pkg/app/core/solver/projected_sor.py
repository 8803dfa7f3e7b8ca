from typing import Optional, Tuple

import numpy as np

from app import logger
from app.core.analytic import validate_scenario
from app.core.exceptions import InadmissibleScenarioError, SolverDivergedError
from app.core.geometry import GridSpec, NodeClass, ScalarField
from app.core.solver.diagnostics import complementarity_residual, energy
from app.core.solver.kernel import projected_sor_sweeps
from app.schemas.scenario import Scenario
from app.schemas.solver import SolveReport, SolverParams

# 每批扫描后打印一次进度
SWEEP_CHUNK = 2000


def boundary_values(grid: GridSpec, scenario: Scenario) -> np.ndarray:
    """初始盒子数组：SPHERE 节点取径向投影处的边界数据，其余为 0"""
    datum = validate_scenario(scenario, grid)
    values = np.zeros(int(np.prod(grid.shape)), dtype=np.float64)
    values[grid.ids_of_class(NodeClass.SPHERE)] = datum(grid.sphere_directions)
    return values


def minimize(grid: GridSpec, scenario: Scenario, params: Optional[SolverParams] = None) -> Tuple[ScalarField, SolveReport]:
    """在离散约束集上极小化对称化 Dirichlet 能量

    从零初值出发按字典序做投影 SOR 扫描，THIN_FREE 节点每次更新后投影到
    [0, ∞)，THIN_CLAMPED 节点始终为 0。

    Args:
        grid: 网格
        scenario: 边界数据场景
        params: 求解参数，默认读取 solver_config

    Returns:
        (解场, 求解报告)
    """
    if grid.dimension != scenario.dimension:
        raise InadmissibleScenarioError(f"网格维数 {grid.dimension} 与场景维数 {scenario.dimension} 不一致")
    params = params or SolverParams.from_config()
    values = boundary_values(grid, scenario)

    free_ids = np.ascontiguousarray(grid.free_ids, dtype=np.int64)
    neighbours = np.ascontiguousarray(grid.stencil[free_ids])
    thin_free = grid.classes.ravel()[free_ids] == NodeClass.THIN_FREE

    logger.info(
        f"开始求解 {scenario.label}: n={grid.dimension}, h=1/{grid.inverse_h}, 自由节点 {free_ids.size}, "
        f"ω={params.omega}, τ={params.tolerance:.1e}"
    )
    iterations, max_update = 0, np.inf
    while iterations < params.max_iterations:
        chunk = min(SWEEP_CHUNK, params.max_iterations - iterations)
        done, max_update = projected_sor_sweeps(
            values, free_ids, neighbours, thin_free, params.omega, params.tolerance, chunk
        )
        iterations += int(done)
        if max_update <= params.tolerance:
            break
        logger.debug(f"已扫描 {iterations} 次，最大更新量 {max_update:.3e}")

    field = ScalarField(grid, values.reshape(grid.shape))
    residual = complementarity_residual(field, params.activity_threshold)
    report = SolveReport(
        iterations=iterations,
        max_update=float(max_update),
        energy=energy(field),
        complementarity=residual.worst,
        converged=bool(max_update <= params.tolerance),
    )
    if not report.converged:
        logger.error(f"投影 SOR 在 {iterations} 次扫描内未收敛，最大更新量 {max_update:.3e}")
        raise SolverDivergedError(f"投影 SOR 在 {iterations} 次扫描内未收敛", field=field, report=report)

    logger.info(f"求解完成: {iterations} 次扫描，能量 {report.energy:.10g}，互补违背 {report.complementarity:.3e}")
    return field, report
