"""Torque assembly, energy bookkeeping and pipeline behaviour."""
import numpy as np
import pytest

from springcrank.errors import TotalInfeasibleError
from springcrank.geometry import (Branch, CouplerAttachment, Direction,
                                  FourBarGeometry, coupler_point)
from springcrank.numerics import angle_in_arc, cycle_integral, theta_grid
from springcrank.placement import SpringDesign
from springcrank.torque import (ConstantLoad, RATIO_TOTAL, design_pipeline,
                                kinematic_torque, spring_torque,
                                total_torque_profile, transmission_analysis,
                                unfavorable_regions)

LOAD = ConstantLoad(1.0)


def arc_contains(intervals, theta):
    return any(angle_in_arc(theta, start, end, ccw=True, margin=0.0)
               for start, end in intervals)


class TestKinematicTorque:
    def test_vanishes_at_dead_centers(self, slider):
        assert kinematic_torque(slider, LOAD, 0.0) == 0.0
        assert abs(kinematic_torque(slider, LOAD, np.pi)) < 1e-12

    def test_quarter_value(self, slider):
        assert float(kinematic_torque(slider, LOAD, np.pi / 2)) == pytest.approx(1.0, abs=1e-12)

    def test_two_positive_lobes(self, slider):
        """Normalized transmission curve: zeros only at the dead centers."""
        T = np.asarray(kinematic_torque(slider, LOAD, theta_grid(3600)))
        assert np.all(T >= 0.0)
        above = T > 1e-9
        flips = int(np.sum(above != np.roll(above, 1)))
        assert flips == 4   # two lobes = four edges


class TestSpringTorque:
    def test_zero_at_profile_extremum(self):
        design = SpringDesign((0.0, 0.0), stiffness=2.0, rest_length=1.0)
        assert spring_torque(design, 3.0, 0.0) == 0.0

    def test_zero_at_rest_length(self):
        design = SpringDesign((0.0, 0.0), stiffness=2.0, rest_length=1.0)
        assert spring_torque(design, 1.0, 0.7) == 0.0

    def test_release_drives_forward(self):
        design = SpringDesign((0.0, 0.0), stiffness=0.5, rest_length=1.0)
        assert spring_torque(design, 3.0, -1.0) == pytest.approx(1.0)


class TestUnfavorableRegions:
    def test_two_regions_around_the_singularities(self, slider):
        T = np.asarray(kinematic_torque(slider, LOAD, theta_grid(3600)))
        regions = unfavorable_regions(slider, LOAD, 0.4 * float(T.max()))
        assert len(regions.intervals) == 2
        flags = [arc_contains(regions.intervals, 0.0),
                 arc_contains(regions.intervals, np.pi)]
        assert all(flags)

    def test_widths_shrink_with_lighter_loads(self, slider):
        T_max = float(np.max(kinematic_torque(slider, LOAD, theta_grid(3600))))
        widths = [unfavorable_regions(slider, LOAD, f * T_max).theta_s
                  for f in (0.1, 0.2, 0.4)]
        assert widths[0] < widths[1] < widths[2]

    def test_excessive_load_is_infeasible(self, slider):
        T_max = float(np.max(kinematic_torque(slider, LOAD, theta_grid(3600))))
        with pytest.raises(TotalInfeasibleError):
            unfavorable_regions(slider, LOAD, 1.5 * T_max)


class TestTotalTorqueProfile:
    def test_zero_stiffness_reduces_to_kinematics(self, slider, arm_perp):
        design = SpringDesign((0.0, 3.0), stiffness=0.0, rest_length=2.0)
        profile = total_torque_profile(slider, arm_perp, Branch.OPEN, LOAD,
                                       design, Direction.CW)
        assert np.array_equal(profile.T_total, profile.T_kin)
        assert profile.ratio == 0.0    # kinematic zeros at the dead centers

    def test_components_sum_exactly(self, reference_design):
        profile = reference_design.torque
        assert np.array_equal(profile.T_total, profile.T_kin + profile.T_spring)
        assert np.all(profile.T_kin >= 0.0)

    def test_spring_is_conservative(self, reference_design):
        profile = reference_design.torque
        spring = reference_design.spring
        swing = reference_design.profile.l_max - reference_design.profile.l_min
        storable = 0.5 * spring.stiffness * swing ** 2
        assert abs(cycle_integral(profile.T_spring)) <= 1e-6 * storable

    def test_spring_torque_is_minus_potential_gradient(self, slider, arm_perp,
                                                       reference_design):
        """FD oracle on V = 0.5 K (l - l0)^2 along the travel direction.

        Scale-relative bound: pointwise relative comparison is ill-posed where
        (l - l0) and dl/dtheta vanish together (a quadratic zero of V').
        """
        design = reference_design.spring
        h = 1e-5
        th = theta_grid(720)

        def potential(t):
            p = coupler_point(slider, arm_perp, t)
            l = np.hypot(p[..., 0] - design.grounding[0], p[..., 1] - design.grounding[1])
            return 0.5 * design.stiffness * (l - design.rest_length) ** 2

        # clockwise travel: s = -theta, so -dV/ds = +dV/dtheta
        fd = (potential(th + h) - potential(th - h)) / (2 * h)
        from springcrank.placement import spring_length_profile
        prof = spring_length_profile(slider, arm_perp, Branch.OPEN, design.grounding, 720)
        T_spring = -design.stiffness * (prof.lengths - design.rest_length) * (-prof.dl_dtheta)
        mask = np.ones(720, dtype=bool)
        for t, _ in prof.extrema:
            mask &= np.abs(((th - t + np.pi) % (2 * np.pi)) - np.pi) > 1e-3
        scale = np.max(np.abs(T_spring))
        assert np.max(np.abs(T_spring[mask] - fd[mask])) <= 1e-6 * scale

    def test_energy_release_balances_storage(self, reference_design):
        intervals = reference_design.torque.energy_intervals
        released = sum(iv.energy for iv in intervals if iv.kind == "release")
        stored = sum(iv.energy for iv in intervals if iv.kind == "store")
        assert released == pytest.approx(stored, rel=1e-6)
        assert released > 0.0

    def test_stored_energy_matches_sizing(self, reference_design):
        spring = reference_design.spring
        swing = reference_design.profile.l_max - reference_design.profile.l_min
        W = reference_design.sizing.T_load * reference_design.sizing.theta_s
        assert 0.5 * spring.stiffness * swing ** 2 == pytest.approx(W, rel=1e-15)

    def test_mirror_antisymmetry(self, slider, arm_perp, reference_design):
        """CW at beta equals CCW at 2*pi - beta, indexed in reverse."""
        mirrored = design_pipeline(slider, CouplerAttachment(6.0, 3 * np.pi / 2),
                                   Branch.OPEN, LOAD, 0.4, Direction.CCW)
        fwd = reference_design.torque.T_total
        rev = mirrored.torque.T_total
        n = len(fwd)
        idx = (n - np.arange(n)) % n
        assert np.max(np.abs(fwd - rev[idx])) < 1e-9

    def test_ratio_is_scale_invariant(self, reference_design):
        scale = 3.7
        scaled = design_pipeline(
            FourBarGeometry.slider_crank(scale, 6 * scale),
            CouplerAttachment(6 * scale, np.pi / 2),
            Branch.OPEN, LOAD, 0.4, Direction.CW)
        assert abs(scaled.ratio - reference_design.ratio) < 1e-9


class TestDesignPipeline:
    def test_reference_design_is_feasible(self, reference_design):
        feas = reference_design.feasibility
        assert feas.ok and feas.condition1 and feas.condition2
        assert reference_design.torque.T_min > 0.0
        assert reference_design.ratio > 0.25

    def test_slider_pin_attachment_fails_condition2(self, slider):
        result = design_pipeline(slider, CouplerAttachment(6.0, 0.0), Branch.OPEN,
                                 LOAD, 0.4, Direction.CW)
        assert result.feasibility.condition1
        assert not result.feasibility.condition2
        assert not result.feasibility.ok

    def test_mirrored_arm_drives_backwards(self, slider):
        result = design_pipeline(slider, CouplerAttachment(6.0, 3 * np.pi / 2),
                                 Branch.OPEN, LOAD, 0.4, Direction.CW)
        assert result.torque.T_min < 0.0

    def test_total_ratio_baseline_switch(self, slider, arm_perp, reference_design):
        alt = design_pipeline(slider, arm_perp, Branch.OPEN, LOAD, 0.4,
                              Direction.CW, ratio_baseline=RATIO_TOTAL)
        assert alt.torque.ratio == pytest.approx(
            alt.torque.T_min / alt.torque.T_total_max, rel=1e-15)
        assert alt.torque.T_min == reference_design.torque.T_min

    def test_precomputed_base_changes_nothing(self, slider, arm_perp, reference_design):
        base = transmission_analysis(slider, Branch.OPEN, LOAD, 0.4)
        redo = design_pipeline(slider, arm_perp, Branch.OPEN, LOAD, 0.4,
                               Direction.CW, base=base)
        assert redo.ratio == reference_design.ratio
        assert np.array_equal(redo.torque.T_total, reference_design.torque.T_total)

    def test_rocker_reference_runs_clockwise(self, rocker):
        result = design_pipeline(rocker, CouplerAttachment(4.4, np.pi / 3),
                                 Branch.OPEN, LOAD, 0.4, Direction.CW)
        assert result.feasibility.ok
        assert result.torque.T_min > 0.0

    def test_fraction_validation(self, slider, arm_perp):
        with pytest.raises(ValueError):
            design_pipeline(slider, arm_perp, Branch.OPEN, LOAD, 1.2, Direction.CW)
