"""Spring placement and sizing tests."""
import numpy as np
import pytest

from springcrank.errors import (DegenerateCurveError, NumericalError,
                                PlacementError, SizingError)
from springcrank.geometry import (Branch, CouplerAttachment, Direction,
                                  coupler_curve, singular_angles)
from springcrank.numerics import angle_in_arc
from springcrank.placement import (SizingInput, SpringLengthProfile,
                                   feasibility_conditions, grounding_point,
                                   relaxed_length, size_spring,
                                   spring_length_profile, transition_points)


def brute_force_farthest_pair(points):
    """O(N^2) oracle with the same per-pair arithmetic as production."""
    best = (-1.0, None)
    n = len(points)
    for i in range(n - 1):
        dx = points[i + 1:, 0] - points[i, 0]
        dy = points[i + 1:, 1] - points[i, 1]
        d2 = dx * dx + dy * dy
        j = int(np.argmax(d2))
        if d2[j] > best[0]:
            best = (float(d2[j]), (i, i + 1 + j))
    return best[1]


def synthetic_profile(l_min, l_max, scale=1.0):
    """Bare profile carrying only the fields size_spring reads."""
    return SpringLengthProfile(
        theta=np.zeros(2), lengths=np.array([l_min, l_max]),
        dl_dtheta=np.zeros(2), l_min=l_min, l_max=l_max,
        extrema=(), length_scale=scale)


class TestTransitionPoints:
    def test_circle_antipodal_pair(self, slider):
        curve = coupler_curve(slider, CouplerAttachment(0.0, 0.0), n=720)
        tp = transition_points(curve)
        assert tp.distance == pytest.approx(2 * slider.a, rel=1e-4)
        i, j = tp.indices
        assert j - i == pytest.approx(360, abs=1)

    def test_circle_tie_break_is_deterministic(self, slider):
        curve = coupler_curve(slider, CouplerAttachment(0.0, 0.0), n=720)
        first = transition_points(curve)
        second = transition_points(curve)
        assert first.indices == second.indices

    def test_segment_endpoints(self, slider):
        curve = coupler_curve(slider, CouplerAttachment(6.0, 0.0), n=720)
        tp = transition_points(curve)
        assert tp.distance == pytest.approx(2 * slider.a, rel=1e-6)
        xs = sorted((tp.s1[0], tp.s2[0]))
        assert xs[0] == pytest.approx(5.0, abs=1e-4)
        assert xs[1] == pytest.approx(7.0, abs=1e-4)

    def test_matches_brute_force_scan(self, slider, arm_perp):
        curve = coupler_curve(slider, arm_perp, n=240)
        tp = transition_points(curve)
        assert tp.indices == brute_force_farthest_pair(curve.points)

    def test_degenerate_curve_rejected(self, slider):
        curve = coupler_curve(slider, CouplerAttachment(0.0, 0.0), n=32)
        shrunk = type(curve)(theta=curve.theta,
                             points=np.zeros_like(curve.points),
                             closed=True, length_scale=slider.a)
        with pytest.raises(DegenerateCurveError):
            transition_points(shrunk)


class TestGroundingPoint:
    def test_circle_midpoint_is_the_center(self, slider):
        curve = coupler_curve(slider, CouplerAttachment(0.0, 0.0), n=720)
        tp = transition_points(curve)
        g = grounding_point(curve, tp.s1, tp.s2)
        assert np.hypot(*g) < 1e-8   # distance to curve = a >= 0.05 a

    def test_segment_midpoint_falls_back_to_bisector(self, slider):
        """Midpoint on the path itself: anchor moves one clearance off the axis."""
        curve = coupler_curve(slider, CouplerAttachment(6.0, 0.0), n=720)
        tp = transition_points(curve)
        clearance = 0.05 * slider.a
        g = grounding_point(curve, tp.s1, tp.s2, clearance)
        assert abs(g[0] - 6.0) < 1e-3
        assert abs(g[1]) == pytest.approx(clearance, rel=0.05)
        # positive-normal side of the (s1 -> s2) chord wins the exact tie
        chord = tp.s2 - tp.s1
        normal = np.array([-chord[1], chord[0]])
        assert np.dot(g - 0.5 * (tp.s1 + tp.s2), normal) > 0
        dmin = np.min(np.hypot(curve.x - g[0], curve.y - g[1]))
        assert dmin >= clearance

    def test_reference_midpoint_accepted(self, slider, arm_perp):
        curve = coupler_curve(slider, arm_perp, n=720)
        tp = transition_points(curve)
        g = grounding_point(curve, tp.s1, tp.s2)
        assert np.allclose(g, 0.5 * (tp.s1 + tp.s2), atol=1e-14)
        assert np.min(np.hypot(curve.x - g[0], curve.y - g[1])) >= 0.05 * slider.a

    def test_unreachable_clearance_raises(self, slider):
        curve = coupler_curve(slider, CouplerAttachment(0.0, 0.0), n=180)
        tp = transition_points(curve)
        with pytest.raises(PlacementError):
            grounding_point(curve, tp.s1, tp.s2, clearance=200.0 * slider.a)


class TestSpringLengthProfile:
    def test_crank_grounded_at_pivot_is_constant(self, slider):
        profile = spring_length_profile(slider, CouplerAttachment(0.0, 0.0),
                                        Branch.OPEN, (0.0, 0.0), 720)
        assert np.allclose(profile.lengths, slider.a, atol=1e-14)
        assert profile.extrema == ()

    def test_distant_anchor_on_slider_axis(self, slider):
        """l = sqrt(u^2 + h^2): extrema exactly at the dead centers."""
        h = 9.0
        profile = spring_length_profile(slider, CouplerAttachment(6.0, 0.0),
                                        Branch.OPEN, (0.0, h), 3600)
        from springcrank.geometry import slider_position
        u = np.asarray(slider_position(slider, profile.theta))
        assert np.allclose(profile.lengths, np.hypot(u, h), atol=1e-12)
        kinds = dict(((round(t, 6), k) for t, k in profile.extrema))
        assert len(profile.extrema) == 2
        assert kinds.get(0.0) == "max"
        assert kinds.get(round(np.pi, 6)) == "min"

    def test_reference_design_has_four_alternating_extrema(self, reference_design):
        """Two maxima (the transition points) and two minima per revolution.

        Independent oracle: sign changes of the sampled length differences.
        """
        profile = reference_design.profile
        diffs = np.diff(profile.lengths)
        signs = np.sign(diffs[diffs != 0.0])
        flips = int(np.sum(signs != np.roll(signs, 1)))
        assert flips == 4
        assert len(profile.extrema) == 4
        kinds = [k for _, k in profile.extrema]
        assert kinds in (["max", "min"] * 2, ["min", "max"] * 2)
        assert len(profile.maxima) == 2

    def test_anchor_on_curve_rejected(self, slider):
        curve = coupler_curve(slider, CouplerAttachment(0.0, 0.0), n=720)
        on_curve = curve.points[17]
        with pytest.raises(NumericalError):
            spring_length_profile(slider, CouplerAttachment(0.0, 0.0),
                                  Branch.OPEN, on_curve, 720)


class TestSizing:
    def test_relaxed_length_is_minimum(self):
        assert relaxed_length(synthetic_profile(2.0, 6.0)) == 2.0

    @pytest.mark.parametrize("T_load,theta_s,l_min,l_max,expected", [
        (1.0, 1.0, 2.0, 4.0, 0.5),
        (2.0, 0.5, 1.0, 2.0, 2.0),
    ])
    def test_direct_substitution(self, T_load, theta_s, l_min, l_max, expected):
        K = size_spring(SizingInput(T_load, theta_s), synthetic_profile(l_min, l_max))
        assert K == pytest.approx(expected, rel=1e-15)

    def test_zero_width_region_means_no_spring(self):
        assert size_spring(SizingInput(5.0, 0.0), synthetic_profile(1.0, 3.0)) == 0.0

    def test_flat_profile_cannot_store(self):
        with pytest.raises(SizingError):
            size_spring(SizingInput(1.0, 1.0), synthetic_profile(2.0, 2.0))

    def test_energy_identity_machine_precision(self):
        """0.5 K (l_max - l_min)^2 recovers T_load * theta_s to a few ulps."""
        rng = np.random.default_rng(11)
        for _ in range(100):
            T_load = rng.uniform(0.1, 50.0)
            theta_s = rng.uniform(1e-3, 2 * np.pi - 1e-6)
            l_min = rng.uniform(0.1, 5.0)
            l_max = l_min + rng.uniform(1e-3, 10.0)
            K = size_spring(SizingInput(T_load, theta_s), synthetic_profile(l_min, l_max))
            stored = 0.5 * K * (l_max - l_min) ** 2
            assert abs(stored - T_load * theta_s) <= 1e-15 * (T_load * theta_s)


class TestFeasibilityConditions:
    def test_constant_profile_fails_condition1(self, slider):
        profile = spring_length_profile(slider, CouplerAttachment(0.0, 0.0),
                                        Branch.OPEN, (0.0, 0.0), 720)
        report = feasibility_conditions(profile, singular_angles(slider), Direction.CW)
        assert not report.condition1 and not report.ok
        assert report.release_intervals == ()

    def test_slider_pin_fails_condition2_only(self, slider):
        """Transitions sit exactly on the singular angles: energy arrives too late."""
        curve = coupler_curve(slider, CouplerAttachment(6.0, 0.0), n=720)
        tp = transition_points(curve)
        g = grounding_point(curve, tp.s1, tp.s2)
        profile = spring_length_profile(slider, CouplerAttachment(6.0, 0.0),
                                        Branch.OPEN, g, 3600)
        report = feasibility_conditions(profile, singular_angles(slider), Direction.CW)
        assert report.condition1
        assert not report.condition2
        assert not report.ok

    def test_reference_design_passes_with_quarters(self, reference_design, slider):
        report = reference_design.feasibility
        assert report.ok and report.condition1 and report.condition2
        for target in singular_angles(slider):
            assert any(angle_in_arc(float(target), s, e, ccw=False, margin=1e-6)
                       for s, e in report.release_intervals)

    def test_circular_path_never_serves_both_singularities(self, slider):
        """A crank-circle attachment has a single transition point; its one
        release arc cannot strictly contain both dead centers."""
        rng = np.random.default_rng(42)
        sing = singular_angles(slider)
        crank_arm = CouplerAttachment(0.0, 0.0)
        checked = 0
        while checked < 100:
            radius = rng.uniform(0.2, 5.0)
            angle = rng.uniform(0.0, 2 * np.pi)
            if abs(radius - slider.a) < 0.05:
                continue   # keep the anchor off the path
            anchor = (radius * np.cos(angle), radius * np.sin(angle))
            profile = spring_length_profile(slider, crank_arm, Branch.OPEN, anchor, 720)
            assert len(profile.maxima) == 1
            report = feasibility_conditions(profile, sing, Direction.CW)
            assert not report.condition1
            both_inside = all(
                any(angle_in_arc(float(t), s, e, ccw=False, margin=1e-6)
                    for s, e in report.release_intervals)
                for t in sing)
            assert not both_inside
            checked += 1
