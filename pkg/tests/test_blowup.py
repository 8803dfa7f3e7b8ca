import math

import numpy as np
import pytest

from app.core.analytic import slit_value
from app.core.blowup import default_window, estimate_homogeneity, homogeneity_deviation, rescale
from app.core.blowup.estimator_factory import EstimatorFactory
from app.core.blowup.estimator_strategy import LogSlopeEstimator, NExtrapolationEstimator
from app.core.exceptions import DegenerateFieldError, DomainError
from app.core.frequency import frequency_profile, height
from app.core.geometry import FieldLike, ScalarField
from app.schemas.blowup import EstimatorKind

ORIGIN = (0.0, 0.0)
WINDOW = (0.15, 0.45)


# ------------------------------ #  重标度部分


def test_rescaled_slit_is_constant_multiple(sampled):
    blowup = rescale(sampled(0.5, 64), ORIGIN, 0.5)
    points = np.array([[0.6, 0.3], [0.2, -0.7], [-0.5, 0.5]])
    expected = slit_value(0.5, points) / math.sqrt(math.pi)
    assert np.allclose(blowup.values_at(points), expected, rtol=1e-2)
    assert blowup.normalization == pytest.approx(math.sqrt(math.pi / 2), rel=1e-3)


@pytest.mark.parametrize("x0", (ORIGIN, (0.25, 0.0)))
@pytest.mark.parametrize("r", (0.2, 0.4))
def test_rescaled_field_is_normalized(solved, x0, r):
    blowup = rescale(solved("const1", 32)[0], x0, r)
    assert height(blowup, ORIGIN, 1.0) == pytest.approx(1.0, abs=1e-3)


@pytest.mark.parametrize("x0", (ORIGIN, (0.25, 0.0)))
@pytest.mark.parametrize("r", (0.2, 0.4))
def test_scaling_identity(solved, x0, r):
    field, _ = solved("const1", 32)
    rescaled = frequency_profile(rescale(field, x0, r), ORIGIN, [0.25, 0.5])
    original = frequency_profile(field, x0, [0.25 * r, 0.5 * r])
    assert rescaled.N == pytest.approx(original.N, abs=0.01)


def test_rescale_of_zero_field(grid):
    with pytest.raises(DegenerateFieldError):
        rescale(ScalarField.constant(grid(2, 16), 0.0), ORIGIN, 0.5)


def test_rescale_rejects_ball_outside(sampled):
    with pytest.raises(DomainError):
        rescale(sampled(0.5, 16), (0.75, 0.0), 0.5)


def test_blowup_spacing_scales(sampled):
    blowup = rescale(sampled(0.5, 32), ORIGIN, 0.25)
    assert blowup.spacing == pytest.approx(4 / 32)
    assert blowup.dimension == 2


# ------------------------------ #  齐次偏差部分


def test_homogeneity_deviation_detects_exponent(sampled):
    blowup = rescale(sampled(1.5, 64), ORIGIN, 0.5)
    assert homogeneity_deviation(blowup, 1.5) <= 0.02
    assert homogeneity_deviation(blowup, 0.5) >= 0.2


def test_homogeneity_deviation_of_zero_field(grid):
    assert homogeneity_deviation(ScalarField.constant(grid(2, 16), 0.0), 1.5) == 0.0


def test_homogeneity_deviation_rejects_kappa(sampled):
    with pytest.raises(DomainError):
        homogeneity_deviation(sampled(0.5, 16), 0.0)


# ------------------------------ #  κ 估计部分


def test_estimators_on_synthetic_data():
    radii = np.linspace(0.1, 0.3, 6)
    N = 0.5 + 0.2 * radii
    H = radii ** (1 + 2 * 1.5)
    kappa, residual = NExtrapolationEstimator({"type": "n_extrapolation"}, {}).estimate(radii, N, H, 2)
    assert kappa == pytest.approx(0.5, abs=1e-12)
    assert residual == pytest.approx(0.0, abs=1e-12)
    kappa, residual = LogSlopeEstimator({"type": "log_slope"}, {}).estimate(radii, N, H, 2)
    assert kappa == pytest.approx(1.5, abs=1e-12)


def test_active_estimator_from_config():
    assert EstimatorFactory.active_kind() == EstimatorKind.N_EXTRAPOLATION
    assert isinstance(EstimatorFactory.create_provider(EstimatorKind.LOG_SLOPE), LogSlopeEstimator)


@pytest.mark.parametrize("kappa", (0.5, 1.5))
def test_homogeneity_of_sampled_slit(sampled, kappa):
    estimate = estimate_homogeneity(sampled(kappa, 64), ORIGIN, WINDOW)
    assert estimate.kappa_hat == pytest.approx(kappa, abs=0.05)
    assert abs(estimate.kappa_hat - estimate.secondary_kappa) <= 0.1
    assert not estimate.low_confidence
    assert estimate.method == EstimatorKind.N_EXTRAPOLATION
    assert estimate.secondary_method == EstimatorKind.LOG_SLOPE


def test_homogeneity_at_fixed_boundary_of_constant_data(solved):
    estimate = estimate_homogeneity(solved("const1", 64)[0], ORIGIN, WINDOW)
    assert estimate.kappa_hat == pytest.approx(0.5, abs=0.1)
    # N 单调，外推值不超过窗口右端的频率
    assert estimate.kappa_hat <= estimate.N[-1] + 0.05


def test_default_window(sampled):
    field = sampled(0.5, 64)
    assert default_window(field, ORIGIN) == pytest.approx((6 / 64, 0.3))
    assert default_window(field, (0.8, 0.0)) == pytest.approx((6 / 64, 1 - 3 / 64 - 0.8))


def test_window_outside_validity_range(sampled):
    field = sampled(0.5, 32)
    with pytest.raises(DomainError):
        estimate_homogeneity(field, ORIGIN, (1 / 32, 0.3))
    with pytest.raises(DomainError):
        estimate_homogeneity(field, (0.5, 0.0), (0.2, 0.5))
    with pytest.raises(DomainError):
        estimate_homogeneity(field, ORIGIN, (0.3, 0.2))


def test_window_needs_four_radii(sampled):
    with pytest.raises(DomainError):
        estimate_homogeneity(sampled(0.5, 32), ORIGIN, WINDOW, count=3)


def test_homogeneity_rejects_negative_center(sampled):
    with pytest.raises(DomainError):
        estimate_homogeneity(sampled(0.5, 32), (-0.25, 0.0), (0.15, 0.3))


def test_homogeneity_of_zero_field(grid):
    with pytest.raises(DegenerateFieldError):
        estimate_homogeneity(ScalarField.constant(grid(2, 32), 0.0), ORIGIN, WINDOW)


def test_fields_share_the_analysis_interface(sampled):
    field = sampled(0.5, 16)
    assert isinstance(field, FieldLike)
    assert isinstance(rescale(field, ORIGIN, 0.5), FieldLike)
    assert not isinstance(np.zeros(3), FieldLike)
