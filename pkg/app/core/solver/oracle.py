"""
小规模实例的穷举有效集预言机

先对内部节点做 Schur 补，把问题化为 THIN_FREE 节点上的 k 维严格凸二次规划，
再枚举全部 2^k 个接触模式。可行性判据与投影 SOR 使用同一个单侧法向差分：
约化梯度 g = S v + c 与 ∂_n v 满足 ∂_n v = -g / (2h)。
"""

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from app import app_config, logger
from app.core.exceptions import InadmissibleScenarioError, OracleError
from app.core.geometry import GridSpec, NodeClass, ScalarField
from app.core.solver.projected_sor import boundary_values
from app.schemas.scenario import Scenario

_FEASIBILITY_TOLERANCE = 1e-12
_TIE_TOLERANCE = 1e-12
_SAME_SOLUTION = 1e-10


@dataclass(frozen=True)
class OracleSolution:
    field: ScalarField
    active: np.ndarray  # 按 THIN_FREE 节点编号顺序的接触标记
    feasible_patterns: int


def _stiffness(grid: GridSpec) -> sparse.csr_matrix:
    """能量 ½ vᵀ K v 的刚度矩阵（整个盒子编号，省略公共因子 h^{n-2}）"""
    heads, tails, weights = grid.edges
    total = int(np.prod(grid.shape))
    rows = np.concatenate([heads, tails, heads, tails])
    cols = np.concatenate([heads, tails, tails, heads])
    data = np.concatenate([weights, weights, -weights, -weights])
    return sparse.csr_matrix((data, (rows, cols)), shape=(total, total))


def oracle_solve(grid: GridSpec, scenario: Scenario, max_nodes: Optional[int] = None) -> OracleSolution:
    """枚举 THIN_FREE 节点的所有接触模式，返回能量最小的可行解

    Args:
        grid: 网格（THIN_FREE 节点数不超过 max_nodes）
        scenario: 边界数据场景
        max_nodes: 可枚举的最大节点数，默认读取 solver_config.oracle_max_nodes

    Returns:
        OracleSolution
    """
    if grid.dimension != scenario.dimension:
        raise InadmissibleScenarioError(f"网格维数 {grid.dimension} 与场景维数 {scenario.dimension} 不一致")
    if max_nodes is None:
        max_nodes = int(app_config.section("solver_config").get("oracle_max_nodes", 14))
    thin = grid.ids_of_class(NodeClass.THIN_FREE)
    interior = grid.ids_of_class(NodeClass.INTERIOR)
    if thin.size > max_nodes:
        raise OracleError(f"THIN_FREE 节点数 {thin.size} 超过枚举上限 {max_nodes}")

    values = boundary_values(grid, scenario)
    fixed = np.concatenate([grid.ids_of_class(NodeClass.SPHERE), grid.ids_of_class(NodeClass.THIN_CLAMPED)])
    K = _stiffness(grid)
    K_ii = K[interior][:, interior].tocsc()
    K_it = K[interior][:, thin].toarray()
    K_tt = K[thin][:, thin].toarray()
    b_i = K[interior][:, fixed] @ values[fixed]
    b_t = K[thin][:, fixed] @ values[fixed]

    lu = splu(K_ii)
    X = lu.solve(K_it) if thin.size else np.zeros((interior.size, 0))
    y = lu.solve(b_i)
    S = K_tt - K_it.T @ X
    c = b_t - K_it.T @ y
    k = thin.size

    best, best_energy, best_active, feasible = None, np.inf, None, 0
    for pattern in itertools.product((True, False), repeat=k):
        active = np.array(pattern, dtype=bool)
        v = np.zeros(k)
        inactive = ~active
        if inactive.any():
            v[inactive] = np.linalg.solve(S[np.ix_(inactive, inactive)], -c[inactive])
        if inactive.any() and v[inactive].min() < -_FEASIBILITY_TOLERANCE:
            continue
        gradient = S @ v + c
        if active.any() and gradient[active].min() < -_FEASIBILITY_TOLERANCE:
            continue
        feasible += 1
        reduced = 0.5 * v @ S @ v + c @ v
        if best is None or reduced < best_energy - _TIE_TOLERANCE:
            best, best_energy, best_active = v, reduced, active
        elif abs(reduced - best_energy) <= _TIE_TOLERANCE:
            # 退化模式（u = 0 且 ∂_n u = 0）给出同一个解，保留接触节点更多的模式
            if np.abs(v - best).max() > _SAME_SOLUTION:
                raise OracleError("存在两个不同的可行解达到最小能量，离散问题不是严格凸的")
            if active.sum() > best_active.sum():
                best_active = active

    if best is None:
        logger.error(f"场景 {scenario.label} 没有可行的接触模式")
        raise OracleError(f"场景 {scenario.label} 没有可行的接触模式")

    best = np.maximum(best, 0.0)
    values[thin] = best
    values[interior] = -(X @ best if k else 0.0) - y
    logger.debug(f"预言机: {k} 个 THIN_FREE 节点，{feasible} 个可行模式，接触节点 {int(best_active.sum())} 个")
    return OracleSolution(field=ScalarField(grid, values.reshape(grid.shape)), active=best_active, feasible_patterns=feasible)


def oracle_minimize(grid: GridSpec, scenario: Scenario) -> ScalarField:
    """穷举预言机给出的离散极小元"""
    return oracle_solve(grid, scenario).field
