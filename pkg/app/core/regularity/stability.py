from typing import Optional, Union

import numpy as np

from app import app_config, logger
from app.config.constant import DEGENERATE_H
from app.core.analytic import BoundaryDatum, scenario_datum
from app.core.exceptions import GridError, NondeterminismError
from app.core.geometry import ScalarField, sphere_quadrature
from app.core.regularity.decay import ball_sup
from app.schemas.regularity import StabilityReport
from app.schemas.scenario import Scenario

Datum = Union[Scenario, BoundaryDatum]


def _as_datum(datum: Datum) -> BoundaryDatum:
    return scenario_datum(datum) if isinstance(datum, Scenario) else datum


def boundary_stability(
    field_1: ScalarField, field_2: ScalarField, datum_1: Datum, datum_2: Datum, radius: Optional[float] = None
) -> StabilityReport:
    """内部差 sup_{|x| <= radius} |u_1 - u_2| 与边界差 ∫_{∂B_1}(g_1 - g_2)² 之比

    边界数据相同时比值记为 0；此时若内部差超过 activity_factor * τ_solve，
    说明求解器不确定，抛出 NondeterminismError。
    """
    if field_1.grid.shape != field_2.grid.shape or field_1.dimension != field_2.dimension:
        raise GridError("两个场不在同一网格上")
    radius = float(app_config.section("regularity_config").get("stability_radius", 0.5)) if radius is None else radius

    difference = ScalarField(field_1.grid, field_1.values - field_2.values)
    interior = ball_sup(difference, np.zeros(field_1.dimension), radius)

    rule = sphere_quadrature(np.zeros(field_1.dimension), 1.0, spacing=field_1.spacing)
    gap = _as_datum(datum_1)(rule.directions) - _as_datum(datum_2)(rule.directions)
    boundary = float(rule.weights @ (gap * gap))

    if boundary < DEGENERATE_H:
        section = app_config.section("solver_config")
        limit = float(section.get("activity_factor", 10.0)) * float(section.get("tolerance", 1e-10))
        if interior > limit:
            logger.error(f"边界数据相同但内部差为 {interior:.3e}，求解结果不确定")
            raise NondeterminismError(f"边界数据相同但内部差为 {interior:.3e}")
        return StabilityReport(interior_gap=interior, boundary_gap=boundary, ratio=0.0, radius=radius)
    return StabilityReport(interior_gap=interior, boundary_gap=boundary, ratio=interior / boundary, radius=radius)
