from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

from app import app_config, logger
from app.core.blowup import estimate_homogeneity
from app.core.exceptions import LabError
from app.core.freeboundary.admissibility import admissibility_check
from app.core.freeboundary.decomposition import decompose_thin
from app.core.geometry import ScalarField
from app.schemas.freeboundary import ClassifiedPoint, ContactFlag, PointClass, ThinDecomposition


def candidate_points(field: ScalarField, decomposition: ThinDecomposition) -> List[Tuple[int, PointClass]]:
    """Γ 上的 Π 节点，以及 x_1 >= ρ_near 的内部 Γ 节点，按节点编号排序"""
    grid = field.grid
    candidates = {}
    for node, flag in decomposition.contact_flags.items():
        if flag != ContactFlag.NOT_ON_GAMMA:
            candidates[node] = PointClass(flag.value)
    for node in decomposition.free_boundary:
        x1 = float(grid.coordinates([node])[0, 0])
        if x1 >= decomposition.rho_near - 1e-12:
            candidates.setdefault(node, PointClass.INTERIOR_FB)
    return sorted(candidates.items())


def classify_point(field: ScalarField, node: int, point_class: PointClass, tolerance: Optional[float] = None) -> ClassifiedPoint:
    """估计单个点的 κ̂ 并判定可容许性；估计失败时记为未解析"""
    location = tuple(field.grid.coordinates([node])[0].tolist())
    try:
        estimate = estimate_homogeneity(field, location)
    except LabError as e:
        logger.warning(f"{point_class.value} 点 {list(location)} 无法估计 κ̂: {e}")
        return ClassifiedPoint(node=node, location=location, point_class=point_class, resolved=False, note=str(e))
    verdict = admissibility_check(point_class, estimate.kappa_hat, tolerance)
    log = logger.info if verdict.passed else logger.warning
    log(f"{point_class.value} 点 {list(location)}: κ̂ = {estimate.kappa_hat:.4f}，{'通过' if verdict.passed else '未通过'}")
    return ClassifiedPoint(
        node=node, location=location, point_class=point_class, kappa_hat=estimate.kappa_hat, verdict=verdict
    )


def classify_fixed_boundary(
    field: ScalarField,
    tau_contact: Optional[float] = None,
    tolerance: Optional[float] = None,
    decomposition: Optional[ThinDecomposition] = None,
) -> List[ClassifiedPoint]:
    """对固定边界与自由边界上的点分类并检查频率的可容许性

    Args:
        field: 求解后的场
        tau_contact: 接触阈值
        tolerance: 可容许性容差，默认 freeboundary_config.admissibility_tolerance
        decomposition: 已有的薄集分解，为空时重新计算

    Returns:
        按节点编号排序的 ClassifiedPoint 列表
    """
    decomposition = decomposition or decompose_thin(field, tau_contact)
    candidates = candidate_points(field, decomposition)
    workers = int(app_config.section("frequency_config").get("workers", 1))

    def _classify(item):
        node, point_class = item
        return classify_point(field, node, point_class, tolerance)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(_classify, candidates))
    return [_classify(item) for item in candidates]
