from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from app import app_config
from app.core.exceptions import DomainError
from app.core.geometry import ScalarField
from app.schemas.freeboundary import ContactFlag, ThinDecomposition


def default_tau_contact(field: ScalarField) -> float:
    """τ_contact = max(activity_factor * τ_solve, h²)"""
    section = app_config.section("solver_config")
    solver_noise = float(section.get("activity_factor", 10.0)) * float(section.get("tolerance", 1e-10))
    return max(solver_noise, field.spacing**2)


def default_rho_near(field: ScalarField) -> float:
    return float(app_config.section("freeboundary_config").get("rho_near_factor", 3.0)) * field.spacing


def decompose_thin(
    field: ScalarField, tau_contact: Optional[float] = None, rho_near: Optional[float] = None
) -> ThinDecomposition:
    """把薄节点分为 Λ、Ω，提取 Γ，并给每个 Π 节点打接触标记

    Π 节点在 Γ∩{x_1 > 0} 中有距离不超过 ρ_near 的节点时为 CONTACT；
    否则若自身属于 Γ 则为 NON_CONTACT；其余为 NOT_ON_GAMMA。

    Args:
        field: 求解后的场
        tau_contact: 接触阈值，默认 default_tau_contact
        rho_near: 接触点判定距离，默认 rho_near_factor * h

    Returns:
        ThinDecomposition
    """
    tau_contact = default_tau_contact(field) if tau_contact is None else float(tau_contact)
    rho_near = default_rho_near(field) if rho_near is None else float(rho_near)
    if tau_contact <= 0:
        raise DomainError(f"τ_contact 必须为正: {tau_contact}")
    grid = field.grid
    thin = grid.thin_ids
    values = field.flat[thin]
    coincidence = thin[values <= tau_contact]
    positivity = thin[values > tau_contact]

    # 薄集内的邻居：模板的前 2(n-1) 列
    in_plane = grid.stencil[coincidence][:, : 2 * (grid.dimension - 1)]
    touches = np.isin(in_plane, positivity).any(axis=1)
    free_boundary = coincidence[touches]

    fixed = grid.fixed_boundary_ids
    flags = {}
    detached = free_boundary[grid.integer_coordinates(free_boundary)[:, 0] > 0] if free_boundary.size else free_boundary
    tree = cKDTree(grid.coordinates(detached)) if detached.size else None
    gamma = set(free_boundary.tolist())
    for node in fixed.tolist():
        near = tree is not None and len(tree.query_ball_point(grid.coordinates([node])[0], rho_near + 1e-12)) > 0
        if near:
            flags[node] = ContactFlag.CONTACT
        elif node in gamma:
            flags[node] = ContactFlag.NON_CONTACT
        else:
            flags[node] = ContactFlag.NOT_ON_GAMMA

    return ThinDecomposition(
        tau_contact=tau_contact,
        rho_near=rho_near,
        coincidence=coincidence.tolist(),
        positivity=positivity.tolist(),
        free_boundary=free_boundary.tolist(),
        fixed_boundary=fixed.tolist(),
        contact_flags=flags,
    )
