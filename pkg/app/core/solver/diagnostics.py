from typing import Optional

import numpy as np

from app import app_config
from app.core.geometry import NodeClass, ScalarField, normal_derivative_thin, stencil_average
from app.schemas.solver import ComplementarityResidual


def energy(field: ScalarField) -> float:
    """偶延拓全球上的离散能量 ½∫|∇v|²

    每个偏导数取在格边中点，即 ½ Σ w h^{n-2} (Δv)²，权重见 GridSpec.edges。
    """
    grid = field.grid
    heads, tails, weights = grid.edges
    jumps = field.flat[tails] - field.flat[heads]
    return float(0.5 * grid.spacing ** (grid.dimension - 2) * np.dot(weights, jumps * jumps))


def discrete_laplacian_residual(field: ScalarField) -> np.ndarray:
    """每个球内节点的模板残差 (邻居平均 - 节点值)，按节点编号顺序

    SPHERE 节点没有完整模板，残差记为 0。
    """
    grid = field.grid
    residual = stencil_average(field) - field.node_values
    residual[grid.classes.ravel()[grid.node_ids] == NodeClass.SPHERE] = 0.0
    return residual


def complementarity_residual(field: ScalarField, activity_threshold: Optional[float] = None) -> ComplementarityResidual:
    """自由薄集上的 Signorini 互补条件违背量

    Args:
        field: 求解后的场
        activity_threshold: 区分接触与脱离的阈值，默认 activity_factor * tolerance

    Returns:
        ComplementarityResidual
    """
    if activity_threshold is None:
        section = app_config.section("solver_config")
        activity_threshold = float(section.get("activity_factor", 10.0)) * float(section.get("tolerance", 1e-10))
    ids = field.grid.ids_of_class(NodeClass.THIN_FREE)
    if ids.size == 0:
        return ComplementarityResidual(sign=0.0, flux=0.0, product=0.0)
    values = field.flat[ids]
    flux = normal_derivative_thin(field, ids)
    detached = values > activity_threshold
    return ComplementarityResidual(
        sign=float(max(0.0, (-values).max())),
        flux=float(max(0.0, flux[detached].max())) if detached.any() else 0.0,
        product=float(np.abs(values * flux).max()),
    )


def energy_perturbation_gap(field: ScalarField, count: int = 20, seed: int = 0, step: float = 1e-3) -> float:
    """随机容许扰动下的最小能量增量 min (E(u + tφ) - E(u))

    φ 在内部节点上取标准正态，在自由薄节点上取非负值；t = -step 时
    把会让 u + tφ 变负的薄节点上的 φ 置零，保证扰动后仍在约束集内。
    对离散极小元该值应不小于 -energy_tolerance。
    """
    grid = field.grid
    rng = np.random.default_rng(seed)
    base = energy(field)
    interior = grid.ids_of_class(NodeClass.INTERIOR)
    thin = grid.ids_of_class(NodeClass.THIN_FREE)
    worst = np.inf
    for _ in range(count):
        direction = np.zeros(field.flat.size)
        direction[interior] = rng.standard_normal(interior.size)
        direction[thin] = np.abs(rng.standard_normal(thin.size))
        for t in (step, -step):
            phi = direction.copy()
            if t < 0:
                phi[thin] = np.where(field.flat[thin] + t * phi[thin] >= 0.0, phi[thin], 0.0)
            perturbed = ScalarField(grid, (field.flat + t * phi).reshape(grid.shape))
            worst = min(worst, energy(perturbed) - base)
    return float(worst)
