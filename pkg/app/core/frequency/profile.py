import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from app import app_config, logger
from app.config.constant import DEGENERATE_H
from app.core.exceptions import DomainError
from app.core.frequency.identities import first_identity_from, rellich_slack_from, second_identity_from
from app.core.frequency.sphere_terms import SphereTerms, check_center, dirichlet_integrals, sphere_terms
from app.core.geometry import FieldLike
from app.schemas.frequency import FrequencyProfile, MonotonicityVerdict


def default_radii(field: FieldLike, center: Sequence[float], count: Optional[int] = None, r_max: Optional[float] = None) -> List[float]:
    """[r_min_factor * h, r_max] 上等距的半径表

    r_max 默认让球离外球面保留 margin_factor * h 的余量。
    """
    section = app_config.section("frequency_config")
    h = field.spacing
    center = np.asarray(center, dtype=np.float64)
    count = int(count or section.get("radius_count", 16))
    r_min = float(section.get("r_min_factor", 4.0)) * h
    limit = field.gradient_radius - float(np.linalg.norm(center))
    r_max = limit if r_max is None else min(r_max, limit)
    if r_max <= r_min:
        raise DomainError(f"中心 {center.tolist()} 离外球面太近，没有可用的半径")
    return np.linspace(r_min, r_max, count).tolist()


def default_monotonicity_tolerance(inverse_h: int) -> float:
    """按 1/h 查加密研究得到的 ε(h)，取不大于 1/h 的最近一档"""
    section = app_config.section("frequency_config")
    table = {int(key): float(value) for key, value in section.get("monotonicity_tolerance", {}).items()}
    coarser = [key for key in table if key <= inverse_h]
    if coarser:
        return table[max(coarser)]
    return float(section.get("monotonicity_tolerance_default", 0.05)) if not table else table[min(table)]


def frequency_profile(field: FieldLike, center: Sequence[float], radii: Optional[Sequence[float]] = None) -> FrequencyProfile:
    """计算一个中心处的 D、H、N、φ 与三个恒等式的残差

    H(r) 低于 1e-14 的半径被丢弃并记录在 dropped 中。

    Args:
        field: 网格场或其重标度
        center: 薄超平面上 x_1 >= 0 的中心
        radii: 严格递增的半径，默认使用 default_radii

    Returns:
        FrequencyProfile
    """
    center = check_center(center, field.dimension)
    radii = default_radii(field, center) if radii is None else [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii[:-1], radii[1:])):
        raise DomainError("半径列表必须严格递增")
    if radii and float(np.linalg.norm(center)) + radii[-1] >= 1.0:
        raise DomainError(f"B_{radii[-1]:.6g}({center.tolist()}) 不在单位球内")
    n = field.dimension

    D = dirichlet_integrals(field, center, radii)
    phi_full = D if n == 2 else dirichlet_integrals(field, center, radii, radial_weight=True)

    workers = int(app_config.section("frequency_config").get("workers", 1))

    def _per_radius(r: float):
        terms = sphere_terms(field, center, r)
        h = field.spacing
        if terms.H < DEGENERATE_H or r <= h or np.linalg.norm(center) + r + h > field.value_radius:
            return terms, math.nan
        return terms, second_identity_from(field, center, terms)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_per_radius, radii))
    else:
        results = [_per_radius(r) for r in radii]

    profile = FrequencyProfile(center=tuple(center.tolist()))
    for index, (r, (terms, res_id2)) in enumerate(zip(radii, results)):
        terms: SphereTerms
        if terms.H < DEGENERATE_H:
            logger.warning(f"中心 {center.tolist()} 半径 {r:.6g} 处 H = {terms.H:.3e} 退化，已丢弃")
            profile.dropped.append(r)
            continue
        profile.radii.append(r)
        profile.D.append(float(D[index]))
        profile.H.append(terms.H)
        profile.N.append(r * float(D[index]) / terms.H)
        profile.phi.append(float(phi_full[index]) / (2.0 * r))
        profile.res_id1.append(first_identity_from(float(D[index]), terms))
        profile.res_id2.append(res_id2)
        profile.rellich_slack.append(rellich_slack_from(n, float(D[index]), terms))

    logger.debug(f"中心 {center.tolist()} 的频率剖面: {len(profile.radii)} 个半径，丢弃 {len(profile.dropped)} 个")
    return profile


def check_monotonicity(profile: FrequencyProfile, tolerance: float) -> MonotonicityVerdict:
    """δ = max(0, max_i N(r_i) - N(r_{i+1}))，单调 ⇔ δ <= tolerance"""
    if len(profile.N) < 2:
        raise DomainError("单调性判定至少需要两个半径")
    N = np.asarray(profile.N)
    drops = N[:-1] - N[1:]
    worst = int(np.argmax(drops))
    delta = max(0.0, float(drops[worst]))
    location = (profile.radii[worst], profile.radii[worst + 1]) if delta > 0 else None
    return MonotonicityVerdict(monotone=delta <= tolerance, delta=delta, location=location, tolerance=tolerance)
