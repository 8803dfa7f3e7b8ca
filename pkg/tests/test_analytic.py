import math

import numpy as np
import pytest
from pydantic import ValidationError

from app.core.analytic import scenario_boundary, slit_field, slit_gradient, slit_value, validate_scenario
from app.core.exceptions import DomainError, InadmissibleScenarioError
from app.schemas.scenario import Scenario

KAPPAS = (0.5, 1.5, 2.5)


# ------------------------------ #  闭式解部分


def test_slit_value_examples():
    assert slit_value(0.5, [1.0, 0.0]) == pytest.approx(1.0)
    assert slit_value(1.5, [0.0, 1.0]) == pytest.approx(-math.sqrt(2) / 2, abs=1e-12)
    assert slit_value(0.5, [-0.25, 0.0]) == 0.0


@pytest.mark.parametrize("kappa", KAPPAS)
def test_slit_value_vanishes_on_slit(kappa):
    points = np.stack([-np.linspace(0.0, 1.0, 33), np.zeros(33)], axis=1)
    assert np.all(slit_value(kappa, points) == 0.0)


@pytest.mark.parametrize("kappa", KAPPAS)
@pytest.mark.parametrize("factor", (0.5, 2.0))
def test_slit_value_is_homogeneous(kappa, factor):
    rng = np.random.default_rng(7)
    points = rng.uniform(-1.0, 1.0, size=(50, 2))
    base = slit_value(kappa, points)
    scaled = slit_value(kappa, factor * points)
    assert np.allclose(scaled, factor**kappa * base, rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("kappa", KAPPAS)
def test_slit_value_is_even(kappa):
    points = np.array([[0.3, 0.4], [-0.6, 0.1], [0.1, 0.9]])
    mirrored = points * np.array([1.0, -1.0])
    assert np.array_equal(slit_value(kappa, points), slit_value(kappa, mirrored))


@pytest.mark.parametrize("point", ([0.3, 0.4], [-0.3, 0.2]))
def test_slit_value_is_discretely_harmonic(point):
    point = np.asarray(point)

    def laplacian(h):
        offsets = np.array([[h, 0.0], [-h, 0.0], [0.0, h], [0.0, -h]])
        around = slit_value(1.5, point + offsets)
        return abs((around.sum() - 4.0 * slit_value(1.5, point)) / h**2)

    assert laplacian(0.02) / laplacian(0.01) >= 3.5


def test_slit_value_is_cylindrical_in_3d():
    assert slit_value(1.5, [0.3, 0.7, 0.2]) == slit_value(1.5, [0.3, 0.2])


def test_slit_value_rejects_kappa():
    with pytest.raises(DomainError):
        slit_value(1.0, [0.5, 0.5])


def test_slit_gradient_examples():
    assert np.allclose(slit_gradient(0.5, [1.0, 0.0]), [0.5, 0.0])
    assert np.sum(slit_gradient(1.5, [0.0, 1.0]) ** 2) == pytest.approx(9 / 4)


@pytest.mark.parametrize("kappa", KAPPAS)
def test_slit_gradient_norm(kappa):
    rng = np.random.default_rng(3)
    points = rng.uniform(-1.0, 1.0, size=(40, 2))
    points[:, 1] += np.where(points[:, 1] >= 0, 0.01, -0.01)
    radius = np.linalg.norm(points, axis=1)
    norms = np.sum(slit_gradient(kappa, points) ** 2, axis=1)
    assert np.allclose(norms, kappa**2 * radius ** (2 * kappa - 2), rtol=1e-12)


def test_slit_gradient_matches_finite_difference():
    point = np.array([0.2, -0.35])
    step = 1e-6
    numeric = [
        (slit_value(1.5, point + step * e) - slit_value(1.5, point - step * e)) / (2 * step) for e in np.eye(2)
    ]
    assert np.allclose(slit_gradient(1.5, point), numeric, atol=1e-7)


def test_slit_gradient_rejects_slit():
    with pytest.raises(DomainError):
        slit_gradient(0.5, [-0.5, 0.0])


def test_three_halves_is_signorini_admissible():
    x1 = np.linspace(0.01, 1.0, 50)
    thin = np.stack([x1, np.zeros_like(x1)], axis=1)
    assert np.all(slit_value(1.5, thin) >= 0)
    assert np.all(np.abs(slit_gradient(1.5, thin)[:, 1]) <= 1e-10)


def test_slit_field_samples_grid(grid):
    g = grid(2, 16)
    field = slit_field(g, 0.5, scale=2.0)
    node = g.node_at([0.25, 0.0])
    assert field.flat[node] == pytest.approx(2.0 * 0.5)


# ------------------------------ #  场景部分


def test_scenario_boundary_examples():
    assert scenario_boundary(Scenario.slit_trace(0.5), [1.0, 0.0]) == pytest.approx(1.0)
    assert scenario_boundary(Scenario.constant(1.0), [0.6, 0.8]) == 1.0
    assert scenario_boundary(Scenario.shifted_slit(1.5, 0.3), [-1.0, 0.0]) == 0.0


def test_scenario_boundary_applies_scale_and_offset():
    scenario = Scenario.constant(1.0, scale=2.0, offset=0.5)
    assert scenario_boundary(scenario, [0.0, 1.0]) == pytest.approx(2.5)


def test_scenario_boundary_requires_unit_points():
    with pytest.raises(DomainError):
        scenario_boundary(Scenario.constant(1.0), [0.5, 0.0])


def test_table_interpolates_in_angle():
    scenario = Scenario.tabulated([1.0, 0.0])
    values = scenario_boundary(scenario, np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]))
    assert np.allclose(values, [1.0, 0.5, 0.0])


@pytest.mark.parametrize("table", ([-0.5, 0.0], [1.0, 0.5]))
def test_inadmissible_table_rejected(table):
    with pytest.raises(InadmissibleScenarioError):
        scenario_boundary(Scenario.tabulated(table), [0.0, 1.0])


def test_negative_constant_is_inadmissible(grid):
    with pytest.raises(InadmissibleScenarioError):
        validate_scenario(Scenario.constant(-1.0))
    with pytest.raises(InadmissibleScenarioError):
        validate_scenario(Scenario.constant(-1.0), grid(2, 8))


def test_validate_scenario_checks_dimension(grid):
    with pytest.raises(InadmissibleScenarioError):
        validate_scenario(Scenario.constant(1.0), grid(3, 8))


def test_scenario_rejects_bad_parameters():
    with pytest.raises(ValidationError):
        Scenario.slit_trace(1.0)
    with pytest.raises(ValidationError):
        Scenario(kind="CONSTANT")
    with pytest.raises(ValidationError):
        Scenario.constant(1.0, dimension=4)


def test_scenario_label():
    assert Scenario.slit_trace(1.5).label == "SLIT_TRACE(1.5)"
    assert Scenario.shifted_slit(1.5, 0.3).label == "SHIFTED_SLIT(1.5, 0.3)"
