"""
频率函数单调性论证中用到的三个微分关系，以残差的形式给出
"""

from typing import Optional, Sequence

import numpy as np

from app import app_config
from app.config.constant import DEGENERATE_H
from app.core.exceptions import DegenerateFieldError, DomainError
from app.core.frequency.sphere_terms import SphereTerms, check_center, dirichlet_integrals, height, sphere_terms
from app.core.geometry import FieldLike, NodeClass


def first_identity_residual(field: FieldLike, center: Sequence[float], r: float) -> float:
    """|D(r) - ∮ u u_ν| / max(D(r), 1e-14)"""
    center = check_center(center, field.dimension)
    D = float(dirichlet_integrals(field, center, [r])[0])
    return first_identity_from(D, sphere_terms(field, center, r))


def first_identity_from(D: float, terms: SphereTerms) -> float:
    return abs(D - terms.flux) / max(D, DEGENERATE_H)


def second_identity_residual(field: FieldLike, center: Sequence[float], r: float, step: Optional[float] = None) -> float:
    """|H'(r) - (n-1) H / r - 2 ∮ u u_ν| / max(H'(r), 1e-14)

    H' 用步长 Δr = h 的中心差分，H(r ± h) 与 H(r) 使用相同的采样数。
    """
    center = check_center(center, field.dimension)
    terms = sphere_terms(field, center, r)
    return second_identity_from(field, center, terms, step)


def second_identity_from(field: FieldLike, center: np.ndarray, terms: SphereTerms, step: Optional[float] = None) -> float:
    step = field.spacing if step is None else step
    r = terms.radius
    if r - step <= 0:
        raise DomainError(f"半径 {r} 太小，无法对 H 做步长 {step} 的中心差分")
    outer = height(field, center, r + step, terms.sample_count)
    inner = height(field, center, r - step, terms.sample_count)
    derivative = (outer - inner) / (2.0 * step)
    n = field.dimension
    return abs(derivative - (n - 1) * terms.H / r - 2.0 * terms.flux) / max(derivative, DEGENERATE_H)


def rellich_slack(field: FieldLike, center: Sequence[float], r: float) -> float:
    """r ∮|∇u|² - (n-2) D(r) - 2r ∮ u_ν²，对极小元应不小于 0，齐次函数取等号"""
    center = check_center(center, field.dimension)
    D = float(dirichlet_integrals(field, center, [r])[0])
    return rellich_slack_from(field.dimension, D, sphere_terms(field, center, r))


def rellich_slack_from(dimension: int, D: float, terms: SphereTerms) -> float:
    r = terms.radius
    return r * terms.gradient - (dimension - 2) * D - 2.0 * r * terms.normal


def frequency_log_derivative_gap(field: FieldLike, center: Sequence[float], r: float) -> float:
    """2 (∮u_ν² / ∮uu_ν - ∮uu_ν / ∮u²)

    由 Cauchy-Schwarz 不等式非负，对齐次函数为 0；这是 log N 的导数中
    除 Rellich 余量以外的部分。
    """
    center = check_center(center, field.dimension)
    terms = sphere_terms(field, center, r)
    if terms.H < DEGENERATE_H or terms.flux <= DEGENERATE_H:
        raise DegenerateFieldError(f"半径 {r} 处 H 或 ∮uu_ν 退化，无法计算对数导数")
    return 2.0 * (terms.normal / terms.flux - terms.flux / terms.H)


def _clamp_violation(field: FieldLike) -> float:
    grid = getattr(field, "grid", None)
    if grid is None:
        return 0.0
    ids = grid.ids_of_class(NodeClass.THIN_CLAMPED)
    return float(np.abs(field.flat[ids]).max()) if ids.size else 0.0


def halfball_weighted_energy(field: FieldLike, r: float, center: Optional[Sequence[float]] = None) -> float:
    """φ(r) = (1/r) ∫_{B_r⁺} |∇u|² / |x|^{n-2}

    上半球的积分取偶延拓全球积分的一半。要求场在夹紧薄集上为 0。
    """
    center = np.zeros(field.dimension) if center is None else check_center(center, field.dimension)
    section = app_config.section("solver_config")
    limit = float(section.get("activity_factor", 10.0)) * float(section.get("tolerance", 1e-10))
    violation = _clamp_violation(field)
    if violation > limit:
        raise DomainError(f"场在夹紧薄集上不为 0（最大 {violation:.3e}），φ(r) 的单调性前提不成立")
    return float(dirichlet_integrals(field, center, [r], radial_weight=True)[0]) / (2.0 * r)
