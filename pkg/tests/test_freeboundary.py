import numpy as np
import pytest

from app.core.exceptions import DomainError
from app.core.freeboundary import (
    admissibility_check,
    candidate_points,
    classify_fixed_boundary,
    decompose_thin,
    default_rho_near,
    default_tau_contact,
    nearest_half_odd,
    nearest_planar_interior,
)
from app.core.geometry import NodeClass, ScalarField
from app.schemas.freeboundary import ContactFlag, PointClass


def check_partition(field, decomposition):
    grid = field.grid
    coincidence = set(decomposition.coincidence)
    positivity = set(decomposition.positivity)
    assert coincidence.isdisjoint(positivity)
    assert coincidence | positivity == set(grid.thin_ids.tolist())
    assert set(grid.ids_of_class(NodeClass.THIN_CLAMPED).tolist()) <= coincidence
    assert set(decomposition.free_boundary) <= coincidence
    assert set(decomposition.contact_flags) == set(grid.fixed_boundary_ids.tolist())


def ramp(start):
    """薄集上为 max(0, x_1 - start) 的场"""
    return lambda p: np.maximum(p[:, 0] - start, 0.0) + p[:, -1]


# ------------------------------ #  薄集分解部分


def test_zero_field_is_all_coincidence(grid):
    field = ScalarField.constant(grid(2, 16), 0.0)
    decomposition = decompose_thin(field)
    check_partition(field, decomposition)
    assert decomposition.positivity == []
    assert decomposition.free_boundary == []
    assert list(decomposition.contact_flags.values()) == [ContactFlag.NOT_ON_GAMMA]


def test_zero_field_in_three_dimensions(grid):
    field = ScalarField.constant(grid(3, 8), 0.0)
    decomposition = decompose_thin(field)
    check_partition(field, decomposition)
    assert len(decomposition.contact_flags) == 15


def test_sampled_three_halves_is_non_contact(sampled):
    field = sampled(1.5, 32)
    decomposition = decompose_thin(field)
    check_partition(field, decomposition)
    origin = field.grid.node_at([0.0, 0.0])
    assert decomposition.free_boundary == [origin]
    assert decomposition.contact_flags == {origin: ContactFlag.NON_CONTACT}
    assert set(decomposition.coincidence) == set(field.grid.ids_of_class(NodeClass.THIN_CLAMPED).tolist())


def test_detachment_near_fixed_boundary_is_contact(grid):
    g = grid(2, 32)
    field = ScalarField.from_function(g, ramp(2 / 32))
    decomposition = decompose_thin(field)
    check_partition(field, decomposition)
    assert g.node_at([2 / 32, 0.0]) in decomposition.free_boundary
    assert decomposition.contact_flags[g.node_at([0.0, 0.0])] == ContactFlag.CONTACT


def test_detachment_far_from_fixed_boundary(grid):
    g = grid(2, 32)
    field = ScalarField.from_function(g, ramp(5 / 32))
    decomposition = decompose_thin(field)
    assert decomposition.contact_flags[g.node_at([0.0, 0.0])] == ContactFlag.NOT_ON_GAMMA
    # 放大 ρ_near 后同一个 Γ 节点足以让 Π 成为接触点
    wider = decompose_thin(field, rho_near=6 / 32)
    assert wider.contact_flags[g.node_at([0.0, 0.0])] == ContactFlag.CONTACT


def test_thresholds_are_monotone(solved):
    field, _ = solved("shifted32", 32)
    tight = decompose_thin(field, tau_contact=1e-6)
    loose = decompose_thin(field, tau_contact=1e-2)
    assert set(tight.coincidence) <= set(loose.coincidence)
    assert set(loose.positivity) <= set(tight.positivity)


def test_shifted_solution_has_interior_free_boundary(solved):
    field, _ = solved("shifted32", 32)
    decomposition = decompose_thin(field)
    check_partition(field, decomposition)
    x1 = field.grid.coordinates(decomposition.free_boundary)[:, 0]
    assert np.any(np.abs(x1 - 0.3) <= 2 / 32)


def test_decomposition_is_deterministic(solved):
    field, _ = solved("slit32", 32)
    assert decompose_thin(field) == decompose_thin(field)


def test_default_thresholds(grid):
    field = ScalarField.constant(grid(2, 16), 0.0)
    assert default_tau_contact(field) == pytest.approx(1 / 256)
    assert default_rho_near(field) == pytest.approx(3 / 16)


def test_nonpositive_tau_rejected(grid):
    with pytest.raises(DomainError):
        decompose_thin(ScalarField.constant(grid(2, 16), 0.0), tau_contact=0.0)


# ------------------------------ #  可容许性部分


def test_admissibility_examples():
    verdict = admissibility_check(PointClass.NON_CONTACT, 0.52, 0.1)
    assert verdict.passed
    assert verdict.nearest == 0.5
    assert verdict.margin == pytest.approx(0.02)

    assert not admissibility_check(PointClass.CONTACT, 1.2, 0.1).passed

    verdict = admissibility_check(PointClass.NON_CONTACT, 1.0, 0.1)
    assert not verdict.passed
    assert verdict.margin == pytest.approx(0.5)


@pytest.mark.parametrize(
    "point_class,kappa,passed",
    [
        (PointClass.CONTACT, 1.45, True),
        (PointClass.CONTACT, 2.3, True),
        (PointClass.INTERIOR_FB, 1.5, True),
        (PointClass.INTERIOR_FB, 0.9, False),
        (PointClass.NON_CONTACT, 0.45, True),
        (PointClass.NON_CONTACT, 0.3, False),
        (PointClass.NON_CONTACT, 2.55, True),
    ],
)
def test_admissibility_table(point_class, kappa, passed):
    assert admissibility_check(point_class, kappa, 0.1).passed is passed


def test_admissibility_accepts_class_names():
    assert admissibility_check("CONTACT", 1.6, 0.1).passed


def test_admissibility_rejects_unknown_class():
    with pytest.raises(ValueError):
        admissibility_check("SINGULAR", 1.5, 0.1)


def test_admissibility_default_tolerance():
    assert admissibility_check(PointClass.NON_CONTACT, 1.5).tolerance == 0.1


def test_nearest_values():
    assert nearest_half_odd(0.1) == 0.5
    assert nearest_half_odd(1.9) == 1.5
    assert nearest_half_odd(2.4) == 2.5
    assert nearest_planar_interior(1.9) == 2.0
    assert nearest_planar_interior(3.6) == 3.5


# ------------------------------ #  固定边界分类部分


def test_candidates_of_sampled_three_halves(sampled):
    field = sampled(1.5, 32)
    origin = field.grid.node_at([0.0, 0.0])
    assert candidate_points(field, decompose_thin(field)) == [(origin, PointClass.NON_CONTACT)]


def test_constant_data_fixed_boundary_is_non_contact(solved):
    field, _ = solved("const1", 64)
    points = classify_fixed_boundary(field)
    assert len(points) == 1
    point = points[0]
    assert point.location == (0.0, 0.0)
    assert point.point_class == PointClass.NON_CONTACT
    assert point.resolved
    assert point.kappa_hat == pytest.approx(0.5, abs=0.1)
    assert point.verdict.passed


def test_shifted_data_interior_point_is_regular(solved):
    field, _ = solved("shifted32", 64)
    points = classify_fixed_boundary(field)
    interior = [p for p in points if p.point_class == PointClass.INTERIOR_FB]
    assert interior
    near = min(interior, key=lambda p: abs(p.location[0] - 0.3))
    assert abs(near.location[0] - 0.3) <= 2 / 64
    assert near.kappa_hat == pytest.approx(1.5, abs=0.1)


def test_unresolved_point_does_not_stop_classification(grid):
    # Γ 节点离外球面太近，默认窗口为空
    g = grid(2, 16)
    field = ScalarField.from_function(g, ramp(14 / 16))
    points = classify_fixed_boundary(field)
    assert points
    assert all(not p.resolved and p.verdict is None for p in points)


EXPECTED_POINTS = {
    "const1": (PointClass.NON_CONTACT, 0.5),
    "slit32": (PointClass.NON_CONTACT, 1.5),
    "shifted32": (PointClass.INTERIOR_FB, 1.5),
}


def verdicts(points):
    return {(p.point_class, p.verdict.passed) for p in points if p.resolved}


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(EXPECTED_POINTS))
def test_classification_on_fine_grid(solved, name):
    point_class, kappa = EXPECTED_POINTS[name]
    points = classify_fixed_boundary(solved(name, 128)[0])
    matching = [p for p in points if p.point_class == point_class and p.resolved]
    assert matching
    assert any(p.kappa_hat == pytest.approx(kappa, abs=0.1) for p in matching)
    assert all(p.verdict.passed for p in points if p.resolved)


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(EXPECTED_POINTS))
def test_verdicts_stable_under_refinement(solved, name):
    coarse = classify_fixed_boundary(solved(name, 64)[0])
    fine = classify_fixed_boundary(solved(name, 128)[0])
    assert verdicts(coarse) == verdicts(fine)
