"""Design-space sweep tests: determinism, masks, solution spaces."""
import numpy as np
import pytest

from springcrank.errors import ConfigError
from springcrank.geometry import Branch, CouplerAttachment, Direction
from springcrank.sweeps import (AttachmentSearch, rocker_solution_space,
                                sweep_attachment, sweep_family)
from springcrank.torque import ConstantLoad, design_pipeline

LOAD = ConstantLoad(1.0)
FAST = dict(n=900, curve_samples=240)


class TestSweepAttachment:
    def test_repeat_runs_are_bit_identical(self, slider):
        ls = np.linspace(0, 8, 9)
        bs = np.linspace(0, np.pi, 9)
        first = sweep_attachment(slider, Branch.OPEN, LOAD, 0.4, Direction.CW,
                                 ls, bs, **FAST)
        second = sweep_attachment(slider, Branch.OPEN, LOAD, 0.4, Direction.CW,
                                  ls, bs, **FAST)
        assert np.array_equal(first.ratio, second.ratio)
        assert np.array_equal(first.feasible, second.feasible)

    def test_failed_cells_carry_minus_inf(self, slider):
        """l = 0 degenerates to the crank circle: flat profile, no sizing."""
        grid = sweep_attachment(slider, Branch.OPEN, LOAD, 0.4, Direction.CW,
                                np.array([0.0, 4.0]), np.array([0.5, 1.0]), **FAST)
        assert np.all(np.isneginf(grid.ratio[0]))
        assert not grid.feasible[0].any()
        assert np.all(np.isfinite(grid.ratio[1]))

    def test_mirrored_half_plane_never_drives_forward(self, slider):
        grid = sweep_attachment(slider, Branch.OPEN, LOAD, 0.4, Direction.CW,
                                np.linspace(1, 8, 8),
                                np.linspace(np.pi + 0.05, 2 * np.pi - 0.05, 9),
                                **FAST)
        finite = grid.ratio[np.isfinite(grid.ratio)]
        assert finite.size > 0
        assert np.all(finite <= 1e-12)
        assert not grid.feasible.any()

    def test_cells_reproduce_standalone_pipeline(self, slider):
        ls = np.linspace(2, 6, 3)
        bs = np.linspace(0.5, 1.5, 3)
        grid = sweep_attachment(slider, Branch.OPEN, LOAD, 0.4, Direction.CW,
                                ls, bs, **FAST)
        for i, j in ((0, 0), (1, 2), (2, 1)):
            redo = design_pipeline(slider, CouplerAttachment(ls[i], bs[j]),
                                   Branch.OPEN, LOAD, 0.4, Direction.CW, **FAST)
            assert grid.ratio[i, j] == redo.ratio

    def test_axis_validation(self, slider):
        with pytest.raises(ConfigError):
            sweep_attachment(slider, Branch.OPEN, LOAD, 0.4, Direction.CW,
                             np.array([1.0]), np.linspace(0, 1, 5), **FAST)

    def test_rocker_directions_see_different_feasible_sets(self, rocker):
        ls = np.linspace(0, 8, 17)
        bs = np.linspace(0, 2 * np.pi, 17, endpoint=False)
        cw = sweep_attachment(rocker, Branch.OPEN, LOAD, 0.4, Direction.CW,
                              ls, bs, **FAST)
        ccw = sweep_attachment(rocker, Branch.OPEN, LOAD, 0.4, Direction.CCW,
                               ls, bs, **FAST)
        assert not np.array_equal(cw.feasible, ccw.feasible)

    def test_refinement_keeps_area_stable(self, slider):
        """Feasible-area estimate moves < 5% when the grid doubles."""
        coarse = sweep_attachment(slider, Branch.OPEN, LOAD, 0.4, Direction.CW,
                                  np.linspace(0, 8, 21), np.linspace(0, np.pi, 21),
                                  n=1800, curve_samples=360)
        fine = sweep_attachment(slider, Branch.OPEN, LOAD, 0.4, Direction.CW,
                                np.linspace(0, 8, 41), np.linspace(0, np.pi, 41),
                                n=1800, curve_samples=360)
        assert coarse.feasible_area > 0
        change = abs(fine.feasible_area - coarse.feasible_area) / coarse.feasible_area
        assert change < 0.05


class TestSweepFamily:
    def test_unit_coupler_ratio_has_no_solutions(self):
        entries = sweep_family([1.0], np.linspace(0, 6, 5), np.linspace(0, np.pi, 5),
                               n=900, curve_samples=240)
        assert entries[0].grid is None
        assert entries[0].feasible_area == 0.0
        assert entries[0].beta_extent == 0.0

    def test_family_reports_best_cells(self):
        entries = sweep_family([4.0], np.linspace(1, 6, 11), np.linspace(0.3, 1.6, 11),
                               n=900, curve_samples=240)
        entry = entries[0]
        assert entry.best_ratio > 0.4
        assert entry.best_cell is not None
        assert entry.feasible_area > 0.0


class TestSolutionSpace:
    SEARCH = AttachmentSearch(l_steps=9, beta_steps=17, n=720, curve_samples=240)

    def test_transmission_ratio_must_exceed_one(self):
        with pytest.raises(ConfigError):
            rocker_solution_space(1.0, np.linspace(2, 8, 3), np.linspace(2, 8, 3))

    def test_reference_cell_is_crank_rocker(self):
        space = rocker_solution_space(
            2.0, np.array([5.0, 6.0]), np.array([6.2, 7.0]),
            direction=Direction.CCW, search=self.SEARCH)
        i = list(space.b_values).index(6.0)
        j = list(space.d_values).index(6.2)
        assert space.grashof_ok[i, j]

    def test_feasible_is_subset_of_grashof(self):
        space = rocker_solution_space(
            2.0, np.linspace(1.5, 9, 6), np.linspace(1.5, 9, 6),
            direction=Direction.CCW, search=self.SEARCH)
        assert not np.any(space.feasible & ~space.grashof_ok)
        # the torque requirement prunes part of the kinematically valid plane
        assert np.any(space.grashof_ok & ~space.feasible)
        assert np.any(space.feasible)

    def test_crank_never_shortest_is_rejected(self):
        space = rocker_solution_space(
            2.0, np.array([0.5, 0.9]), np.array([4.0, 5.0]),
            direction=Direction.CCW, search=self.SEARCH)
        assert not space.grashof_ok.any()

    def test_boundary_polylines(self):
        space = rocker_solution_space(
            2.0, np.array([2.0, 8.0]), np.array([2.0, 8.0]),
            direction=Direction.CCW,
            search=AttachmentSearch(l_steps=3, beta_steps=3, n=720, curve_samples=240))
        names = [name for name, _ in space.boundaries]
        assert names == ["longest-b", "longest-c", "longest-d"]
        for _, line in space.boundaries:
            assert line.shape == (2, 2)
        # the longest-d boundary is d = b + c - 1
        line = dict(space.boundaries)["longest-d"]
        assert line[0][1] == pytest.approx(line[0][0] + 2.0 - 1.0)
