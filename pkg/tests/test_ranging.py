import math
from fractions import Fraction
import pytest
from conftest import DESIGNED_BASELINE, REF_BASELINE, REF_FOV_RAD, REF_HRES
from core.exceptions import DomainError, NonPositiveDisparityError
from core.geometry import CameraModel, focal_pixels
from core.ranging import (
    Disparity,
    SampleMarker,
    design_baseline,
    disparity_for_range,
    fig1_curve,
    fig3_curve,
    group_samples,
    max_reliable_range,
    min_reliable_disparity,
    quantization_error,
    range_eq1,
    range_from_continuous,
    range_from_disparity,
    range_step,
    size_dependent_error,
    sweep_grid,
)


class TestRangeFromDisparity:
    def test_designed_rig_at_reliable_disparity(self):
        estimate = range_from_disparity(DESIGNED_BASELINE, REF_HRES, REF_FOV_RAD, 19)
        assert estimate.range_m == pytest.approx(499.99, abs=0.01)
        assert estimate.eps_quantization == pytest.approx(0.05)

    def test_rounded_baseline(self):
        estimate = range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, 19)
        assert estimate.range_m == pytest.approx(498.99, abs=0.01)

    def test_accepts_disparity_model(self):
        a = range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, Disparity(px=40))
        b = range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, 40)
        assert a == b

    def test_agrees_with_focal_length_form(self, reference_camera):
        f = focal_pixels(reference_camera)
        for n in (1, 7, 19, 150):
            expected = range_eq1(f, REF_BASELINE, n)
            actual = range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, n).range_m
            assert actual == pytest.approx(expected, rel=1e-12)

    def test_strictly_decreasing(self):
        ranges = [
            range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, n).range_m
            for n in range(1, 301)
        ]
        assert all(a > b for a, b in zip(ranges, ranges[1:]))

    @pytest.mark.parametrize("dx", [18.96, 0.5, 19.5])
    def test_rejects_fractional_disparity(self, dx):
        with pytest.raises(DomainError, match="whole number of pixels"):
            range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, dx)
        with pytest.raises(DomainError):
            quantization_error(dx)

    def test_accepts_integral_float(self):
        a = range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, 19.0)
        assert a == range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, 19)

    def test_both_forms_agree_over_grid(self):
        for d in [0.1 + 0.5 * i for i in range(10)]:
            for alpha_deg in [1.0 + 6.0 * j for j in range(10)]:
                camera = CameraModel.from_degrees(REF_HRES, 1080, alpha_deg)
                f = focal_pixels(camera)
                for n in [1 + 33 * k for k in range(10)]:
                    expected = range_eq1(f, d, n)
                    actual = range_from_disparity(d, REF_HRES, camera.fov_rad, n).range_m
                    assert actual == pytest.approx(expected, rel=1e-9)

    @pytest.mark.parametrize("dx", [0, -1, -19])
    def test_rejects_non_positive_disparity(self, dx):
        with pytest.raises(NonPositiveDisparityError, match="disparity must be ≥ 1"):
            range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, dx)

    def test_rejects_bad_rig(self):
        with pytest.raises(DomainError):
            range_from_disparity(0.0, REF_HRES, REF_FOV_RAD, 10)
        with pytest.raises(DomainError):
            range_from_disparity(1.0, REF_HRES, math.pi / 2, 10)

    def test_continuous_matches_integer(self):
        assert range_from_continuous(
            REF_BASELINE, REF_HRES, REF_FOV_RAD, 19.0
        ) == pytest.approx(range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, 19).range_m)
        with pytest.raises(NonPositiveDisparityError):
            range_from_continuous(REF_BASELINE, REF_HRES, REF_FOV_RAD, 0.0)

    def test_disparity_for_range(self):
        assert disparity_for_range(
            REF_BASELINE, REF_HRES, REF_FOV_RAD, 500.0
        ) == pytest.approx(18.9615, abs=1e-3)


class TestQuantizationError:
    def test_values(self):
        assert quantization_error(1) == 0.5
        assert quantization_error(19) == pytest.approx(0.05)
        assert quantization_error(99) == pytest.approx(0.01)

    def test_matches_relative_range_gap_exactly(self):
        # r(n) = C/n for any C; the relative gap is independent of the rig
        c = Fraction(3, 7)
        for n in range(1, 200):
            r_n, r_next = c / n, c / (n + 1)
            assert (r_n - r_next) / r_n == Fraction(1, n + 1)

    def test_matches_two_range_computation(self):
        for n in range(1, 10_001):
            r_n = range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, n).range_m
            r_next = range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, n + 1).range_m
            assert quantization_error(n) == pytest.approx((r_n - r_next) / r_n, rel=1e-9)

    def test_rig_independent(self):
        for d, H, alpha in [(0.3, 640, 0.5), (2.0, 4096, 0.1), (REF_BASELINE, REF_HRES, REF_FOV_RAD)]:
            for n in (1, 5, 42):
                r_n = range_from_disparity(d, H, alpha, n).range_m
                r_next = range_from_disparity(d, H, alpha, n + 1).range_m
                assert (r_n - r_next) / r_n == pytest.approx(quantization_error(n), rel=1e-12)

    def test_range_step(self):
        r19 = range_from_disparity(REF_BASELINE, REF_HRES, REF_FOV_RAD, 19).range_m
        step = range_step(REF_BASELINE, REF_HRES, REF_FOV_RAD, 19)
        assert step == pytest.approx(r19 * 0.05, rel=1e-12)

    def test_rejects_zero(self):
        with pytest.raises(NonPositiveDisparityError):
            quantization_error(0)


class TestDesign:
    def test_min_reliable_disparity_at_five_percent(self):
        assert min_reliable_disparity(0.05) == 19

    @pytest.mark.parametrize("s, expected", [(0.5, 1), (0.25, 3), (0.1, 9), (0.01, 99), (0.3, 3)])
    def test_min_reliable_disparity_values(self, s, expected):
        assert min_reliable_disparity(s) == expected

    def test_min_reliable_disparity_is_minimal(self):
        for k in range(1, 200):
            s = k / 200.0
            if s >= 1.0:
                break
            n = min_reliable_disparity(s)
            assert quantization_error(n) <= s
            if n > 1:
                assert quantization_error(n - 1) > s

    @pytest.mark.parametrize("s", [0.0, 1.0, -0.1, 1.5])
    def test_min_reliable_disparity_rejects_out_of_range(self, s):
        with pytest.raises(DomainError):
            min_reliable_disparity(s)

    def test_design_baseline(self):
        d = design_baseline(500.0, REF_FOV_RAD, REF_HRES, 19)
        assert d == pytest.approx(1.14232, abs=1e-4)

    def test_designed_rig_reaches_target_range(self):
        d = design_baseline(500.0, REF_FOV_RAD, REF_HRES, 19)
        assert range_from_disparity(d, REF_HRES, REF_FOV_RAD, 19).range_m == pytest.approx(500.0)

    def test_design_baseline_zero_disparity(self):
        assert design_baseline(500.0, REF_FOV_RAD, REF_HRES, 0) == 0.0

    def test_design_baseline_linear(self):
        base = design_baseline(100.0, REF_FOV_RAD, REF_HRES, 10)
        assert design_baseline(200.0, REF_FOV_RAD, REF_HRES, 10) == pytest.approx(2 * base)
        assert design_baseline(100.0, REF_FOV_RAD, REF_HRES, 30) == pytest.approx(3 * base)
        assert design_baseline(100.0, REF_FOV_RAD, 2 * REF_HRES, 10) == pytest.approx(base / 2)

    def test_design_baseline_rejects_bad_input(self):
        with pytest.raises(DomainError):
            design_baseline(0.0, REF_FOV_RAD, REF_HRES, 19)
        with pytest.raises(DomainError):
            design_baseline(500.0, REF_FOV_RAD, REF_HRES, -1)

    def test_max_reliable_range(self):
        r = max_reliable_range(DESIGNED_BASELINE, REF_HRES, REF_FOV_RAD, 0.05)
        assert r == pytest.approx(499.99, abs=0.01)


class TestSizeDependentError:
    def test_wide_target(self, reference_camera):
        error = size_dependent_error(reference_camera, REF_BASELINE, 2.0, 500.0)
        assert error == pytest.approx(0.055674, abs=1e-5)

    def test_narrow_target(self, reference_camera):
        error = size_dependent_error(reference_camera, REF_BASELINE, 0.5, 500.0)
        assert error == pytest.approx(4 / (18.9615 - 4), abs=1e-4)

    def test_shrinks_with_width(self, reference_camera):
        errors = [
            size_dependent_error(reference_camera, REF_BASELINE, w, 300.0) for w in (0.25, 0.5, 1.0, 2.0)
        ]
        assert all(a >= b for a, b in zip(errors, errors[1:]))

    def test_grows_with_range(self, reference_camera):
        errors = [
            size_dependent_error(reference_camera, REF_BASELINE, 1.0, r) for r in range(50, 501, 50)
        ]
        assert all(b >= a for a, b in zip(errors, errors[1:]))

    def test_unmeasurable(self):
        camera = CameraModel.from_degrees(320, 240, 13.0)
        assert size_dependent_error(camera, 0.1, 0.1, 500.0) is SampleMarker.UNMEASURABLE

    def test_rejects_bad_width(self, reference_camera):
        with pytest.raises(DomainError):
            size_dependent_error(reference_camera, REF_BASELINE, 0.0, 100.0)


class TestCurves:
    def test_sweep_grid_includes_end(self):
        assert sweep_grid(0.0, 1.0, 0.25) == [0.0, 0.25, 0.5, 0.75, 1.0]
        assert len(sweep_grid(0.0, 1.0, 0.01)) == 101
        assert sweep_grid(10.0, 10.0, 5.0) == [10.0]

    def test_sweep_grid_rejects_empty(self):
        with pytest.raises(DomainError):
            sweep_grid(1.0, 0.0, 0.1)
        with pytest.raises(DomainError):
            sweep_grid(0.0, 1.0, 0.0)

    def test_fig1_curve(self):
        samples = fig1_curve(REF_BASELINE, REF_HRES, REF_FOV_RAD, 1, 200)
        assert len(samples) == 200
        assert [s.abscissa for s in samples[:3]] == [1, 2, 3]
        assert samples[18].value == pytest.approx(498.99, abs=0.01)
        assert all(s.is_finite for s in samples)

    def test_fig1_curve_is_hyperbolic(self):
        samples = fig1_curve(DESIGNED_BASELINE, REF_HRES, REF_FOV_RAD, 1, 200)
        products = [s.value * s.abscissa for s in samples]
        assert all(p == pytest.approx(products[0], rel=1e-9) for p in products)
        assert samples[18].abscissa == 19
        assert abs(samples[18].value - 500.0) < 0.5

    def test_fig1_curve_rejects_zero_start(self):
        with pytest.raises(DomainError):
            fig1_curve(REF_BASELINE, REF_HRES, REF_FOV_RAD, 0, 10)

    def test_fig3_curve_families(self, reference_camera):
        samples = fig3_curve(reference_camera, REF_BASELINE, [0.5, 1.0, 2.0, 4.0], 10.0, 500.0, 10.0)
        groups = group_samples(samples)
        assert list(groups) == [0.5, 1.0, 2.0, 4.0]
        assert all(len(g) == 50 for g in groups.values())
        assert groups[2.0][-1].value == pytest.approx(0.055674, abs=1e-5)

    def test_fig3_curve_marks_unmeasurable(self):
        camera = CameraModel.from_degrees(320, 240, 13.0)
        samples = fig3_curve(camera, 0.1, [0.1], 100.0, 500.0, 100.0)
        assert samples[-1].marker is SampleMarker.UNMEASURABLE
        assert samples[-1].value is None
