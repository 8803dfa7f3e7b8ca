import math

import numpy as np
import pytest

from app.core.exceptions import DomainError
from app.core.frequency import (
    check_monotonicity,
    default_monotonicity_tolerance,
    default_radii,
    first_identity_residual,
    frequency_log_derivative_gap,
    frequency_profile,
    halfball_weighted_energy,
    rellich_slack,
    second_identity_residual,
    sphere_terms,
)
from app.core.geometry import ScalarField
from app.schemas.frequency import FrequencyProfile

ORIGIN = (0.0, 0.0)
MONOTONE_PRESETS = ("const1", "slit12", "slit32", "slit52", "shifted32")
THIN_CENTERS = (ORIGIN, (0.25, 0.0), (0.5, 0.0))


def synthetic(N):
    radii = [0.1 * (i + 1) for i in range(len(N))]
    return FrequencyProfile(center=ORIGIN, radii=radii, N=list(N))


# ------------------------------ #  频率剖面部分


@pytest.mark.parametrize("kappa", (0.5, 1.5))
def test_homogeneous_frequency_is_constant(sampled, kappa):
    profile = frequency_profile(sampled(kappa, 64), ORIGIN, [0.25, 0.3, 0.35, 0.4, 0.45, 0.5])
    N = np.asarray(profile.N)
    assert np.all(np.abs(N - kappa) <= 0.05 * max(kappa, 1.0))
    assert N.max() - N.min() <= 0.04 * max(kappa, 1.0)


@pytest.mark.slow
@pytest.mark.parametrize("kappa", (0.5, 1.5, 2.5))
def test_homogeneous_frequency_fine_grid(sampled, kappa):
    profile = frequency_profile(sampled(kappa, 128), ORIGIN, np.linspace(0.1, 0.5, 9))
    assert np.all(np.abs(np.asarray(profile.N) - kappa) <= 0.02)


def test_closed_form_integrals(sampled):
    # H(r) = π r², D(r) = (π/2) r
    profile = frequency_profile(sampled(0.5, 64), ORIGIN, [0.3, 0.5])
    assert profile.H == pytest.approx([math.pi * 0.09, math.pi * 0.25], rel=0.02)
    assert profile.D == pytest.approx([math.pi / 2 * 0.3, math.pi / 2 * 0.5], rel=0.05)


def test_linear_field_has_frequency_one(grid):
    field = ScalarField.from_function(grid(2, 32), lambda p: p[:, 0] - 0.5)
    profile = frequency_profile(field, (0.5, 0.0), [0.1, 0.2, 0.3])
    assert profile.N == pytest.approx([1.0, 1.0, 1.0], abs=1e-8)


def test_zero_field_drops_every_radius(grid):
    field = ScalarField.constant(grid(2, 16), 0.0)
    profile = frequency_profile(field, ORIGIN, [0.25, 0.5])
    assert profile.radii == []
    assert profile.dropped == [0.25, 0.5]


def test_profile_rejects_bad_centers(sampled):
    field = sampled(0.5, 16)
    with pytest.raises(DomainError):
        frequency_profile(field, (-0.25, 0.0), [0.25])
    with pytest.raises(DomainError):
        frequency_profile(field, (0.0, 0.25), [0.25])
    with pytest.raises(DomainError):
        frequency_profile(field, (0.5, 0.0), [0.5])
    with pytest.raises(DomainError):
        frequency_profile(field, ORIGIN, [0.3, 0.2])


def test_default_radii_range(sampled):
    field = sampled(0.5, 64)
    radii = default_radii(field, ORIGIN)
    assert radii[0] == pytest.approx(4 / 64)
    assert radii[-1] == pytest.approx(1 - 2 / 64)
    assert len(radii) == 16
    with pytest.raises(DomainError):
        default_radii(field, (0.95, 0.0))


def test_profile_rows_follow_column_order(sampled):
    profile = frequency_profile(sampled(0.5, 32), ORIGIN, [0.25, 0.5])
    row = profile.rows()[0]
    assert len(row) == 8
    assert row[0] == 0.25
    assert row[3] == profile.N[0]


def test_second_identity_undefined_at_small_radius(sampled):
    field = sampled(0.5, 16)
    profile = frequency_profile(field, ORIGIN, [1 / 16, 0.5])
    assert math.isnan(profile.res_id2[0])
    assert not math.isnan(profile.res_id2[1])


# ------------------------------ #  单调性判定部分


def test_monotonicity_violation():
    verdict = check_monotonicity(synthetic((0.5, 0.4)), 0.05)
    assert not verdict.monotone
    assert verdict.delta == pytest.approx(0.1)
    assert verdict.location == pytest.approx((0.1, 0.2))


def test_monotonicity_flat_pair():
    verdict = check_monotonicity(synthetic((0.5, 0.5)), 0.05)
    assert verdict.monotone
    assert verdict.delta == 0.0
    assert verdict.location is None


def test_monotonicity_within_tolerance():
    verdict = check_monotonicity(synthetic((0.5, 0.48, 0.6)), 0.05)
    assert verdict.monotone
    assert verdict.delta == pytest.approx(0.02)


def test_monotonicity_needs_two_radii():
    with pytest.raises(DomainError):
        check_monotonicity(synthetic((0.5,)), 0.05)


def test_homogeneous_profile_is_monotone(sampled):
    profile = frequency_profile(sampled(1.5, 64), ORIGIN, [0.25, 0.35, 0.45])
    assert check_monotonicity(profile, 0.06).monotone


def test_solver_output_is_monotone(solved):
    field, _ = solved("const1", 32)
    for center, r_max in ((ORIGIN, 0.6), ((0.25, 0.0), 0.5)):
        profile = frequency_profile(field, center, np.linspace(0.125, r_max, 8))
        assert check_monotonicity(profile, default_monotonicity_tolerance(32)).monotone


def worst_drop(field):
    """各中心上 N 的最大下降量，半径不随 h 变化"""
    deltas = []
    for center in THIN_CENTERS:
        radii = np.linspace(0.0625, 0.5 * (1.0 - center[0]), 8)
        deltas.append(check_monotonicity(frequency_profile(field, center, radii), 0.05).delta)
    return max(deltas)


@pytest.mark.slow
@pytest.mark.parametrize("name", MONOTONE_PRESETS)
def test_solver_output_monotone_on_fine_grid(solved, name):
    coarse = worst_drop(solved(name, 64)[0])
    fine = worst_drop(solved(name, 128)[0])
    assert fine <= 0.05
    # 两层网格都几乎没有下降时不比较比值
    assert fine <= max(coarse / 1.5, 1e-3)


def test_default_monotonicity_tolerance():
    assert default_monotonicity_tolerance(128) == 0.05
    assert default_monotonicity_tolerance(64) == 0.06
    assert default_monotonicity_tolerance(100) == 0.06
    assert default_monotonicity_tolerance(8) == 0.2


# ------------------------------ #  恒等式部分


def test_first_identity_on_slit(sampled):
    assert first_identity_residual(sampled(0.5, 64), ORIGIN, 0.5) <= 0.05


@pytest.mark.slow
def test_first_identity_on_slit_fine_grid(sampled):
    assert first_identity_residual(sampled(0.5, 128), ORIGIN, 0.5) <= 0.02


def test_second_identity_on_slit(sampled):
    assert second_identity_residual(sampled(0.5, 64), ORIGIN, 0.4) <= 0.06


@pytest.mark.slow
def test_second_identity_on_slit_fine_grid(sampled):
    assert second_identity_residual(sampled(0.5, 128), ORIGIN, 0.4) <= 0.03


def test_identities_vanish_for_zero_field(grid):
    field = ScalarField.constant(grid(2, 16), 0.0)
    assert first_identity_residual(field, ORIGIN, 0.5) == 0.0
    assert second_identity_residual(field, ORIGIN, 0.5) == 0.0
    assert rellich_slack(field, ORIGIN, 0.5) == 0.0


def test_second_identity_needs_room(sampled):
    with pytest.raises(DomainError):
        second_identity_residual(sampled(0.5, 16), ORIGIN, 1 / 16)


@pytest.mark.slow
def test_first_identity_converges_under_refinement(solved):
    coarse = first_identity_residual(solved("slit32", 64)[0], ORIGIN, 0.4)
    fine = first_identity_residual(solved("slit32", 128)[0], ORIGIN, 0.4)
    assert coarse / fine >= 1.8


@pytest.mark.slow
def test_second_identity_converges_under_refinement(solved):
    # 采样数随 h 一起加密
    coarse = second_identity_residual(solved("slit32", 64)[0], ORIGIN, 0.4)
    fine = second_identity_residual(solved("slit32", 128)[0], ORIGIN, 0.4)
    assert coarse / fine >= 1.8


def test_rellich_equality_for_homogeneous_field(sampled):
    # r = 0.5 时两端都是 π/4
    slack = rellich_slack(sampled(0.5, 64), ORIGIN, 0.5)
    assert abs(slack) <= 0.05 * math.pi / 4


def test_rellich_slack_for_shifted_solution(solved):
    field, _ = solved("shifted32", 32)
    terms = sphere_terms(field, ORIGIN, 0.5)
    assert rellich_slack(field, ORIGIN, 0.5) >= -0.05 * 0.5 * terms.gradient


def test_rellich_rejects_negative_center(sampled):
    with pytest.raises(DomainError):
        rellich_slack(sampled(0.5, 16), (-0.25, 0.0), 0.25)


def test_log_derivative_gap_nonnegative(solved):
    field, _ = solved("const1", 32)
    assert frequency_log_derivative_gap(field, ORIGIN, 0.4) >= -1e-10


# ------------------------------ #  半球带权能量部分


def test_halfball_energy_of_slit(sampled):
    field = sampled(0.5, 64)
    for r in (0.3, 0.45, 0.6):
        assert halfball_weighted_energy(field, r) == pytest.approx(math.pi / 4, rel=0.05)


@pytest.mark.slow
def test_halfball_energy_of_slit_fine_grid(sampled):
    field = sampled(0.5, 128)
    for r in (0.2, 0.4, 0.6):
        assert halfball_weighted_energy(field, r) == pytest.approx(math.pi / 4, rel=0.03)


def test_halfball_energy_of_zero_field(grid):
    assert halfball_weighted_energy(ScalarField.constant(grid(2, 16), 0.0), 0.5) == 0.0


def test_halfball_energy_requires_clamp(grid):
    with pytest.raises(DomainError):
        halfball_weighted_energy(ScalarField.constant(grid(2, 16), 1.0), 0.5)


def test_halfball_energy_nondecreasing_for_solver_output(solved):
    field, _ = solved("const1", 32)
    values = [halfball_weighted_energy(field, r) for r in (0.1, 0.2, 0.3, 0.4, 0.5)]
    assert all(b >= a - 0.05 for a, b in zip(values[:-1], values[1:]))


def test_profile_phi_matches_direct_call(sampled):
    field = sampled(0.5, 32)
    profile = frequency_profile(field, ORIGIN, [0.25, 0.5])
    assert profile.phi[1] == pytest.approx(halfball_weighted_energy(field, 0.5), rel=1e-12)
