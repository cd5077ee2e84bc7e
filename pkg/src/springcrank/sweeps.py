"""Design-space sweeps over attachment parameters and link ratios.

Sweeps are embarrassingly parallel, but cells are evaluated serially in
row-major order and assembled by index, so identical inputs always produce
bit-identical grids (the determinism contract for golden files).  Cells that
fail geometrically carry ratio = -inf and feasible = False; they stay in the
matrix to keep it rectangular.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, MechanismError
from .geometry import (Branch, CouplerAttachment, Direction, FourBarGeometry,
                       grashof_check)
from .torque import (RATIO_KINEMATIC, ConstantLoad, design_pipeline,
                     transmission_analysis)

DEFAULT_THRESHOLD = 0.40


@dataclass(frozen=True)
class SweepGrid:
    """Min-net-torque ratio over a 2-D attachment-parameter grid.

    ``ratio[i, j]`` corresponds to (x_values[i], y_values[j]); x is the arm
    length over crank length, y the arm angle.  ``feasible`` requires both
    ratio >= threshold and the placement feasibility conditions.
    """

    x_name: str
    x_values: np.ndarray
    y_name: str
    y_values: np.ndarray
    ratio: np.ndarray
    feasible: np.ndarray
    threshold: float

    @property
    def feasible_area(self) -> float:
        """Feasible cell count times cell area (zero for degenerate axes)."""
        if len(self.x_values) < 2 or len(self.y_values) < 2:
            return 0.0
        dx = float(self.x_values[1] - self.x_values[0])
        dy = float(self.y_values[1] - self.y_values[0])
        return float(np.count_nonzero(self.feasible)) * dx * dy

    @property
    def beta_extent(self) -> float:
        """Measure of arm angles admitting at least one feasible arm length."""
        if len(self.y_values) < 2:
            return 0.0
        dy = float(self.y_values[1] - self.y_values[0])
        return float(np.count_nonzero(self.feasible.any(axis=0))) * dy


@dataclass(frozen=True)
class FamilyEntry:
    """One coupler-ratio member of a sweep family."""

    b_over_a: float
    grid: SweepGrid | None
    feasible_area: float
    beta_extent: float
    best_ratio: float
    best_cell: tuple[float, float] | None


@dataclass(frozen=True)
class SolutionSpace:
    """Rocker-crank link-ratio plane for a fixed transmission ratio c/a."""

    c_over_a: float
    b_values: np.ndarray
    d_values: np.ndarray
    grashof_ok: np.ndarray
    best_ratio: np.ndarray
    feasible: np.ndarray
    boundaries: tuple[tuple[str, np.ndarray], ...]
    threshold: float


def sweep_attachment(geom: FourBarGeometry, branch: Branch, load: ConstantLoad,
                     fraction: float, direction: Direction,
                     l_values, beta_values,
                     n: int = 3600, curve_samples: int = 720,
                     threshold: float = DEFAULT_THRESHOLD,
                     clearance: float | None = None,
                     ratio_baseline: str = RATIO_KINEMATIC) -> SweepGrid:
    """Evaluate the design pipeline on every (l_ext/a, beta) grid cell.

    ``l_values`` are arm lengths in crank units; cells are visited row-major
    (l outer, beta inner).
    """
    l_values = np.asarray(l_values, dtype=float)
    beta_values = np.asarray(beta_values, dtype=float)
    if l_values.size < 2 or beta_values.size < 2:
        raise ConfigError("sweep axes need at least 2 values each")
    # the singularity/sizing prefix is attachment-independent: compute once
    base = transmission_analysis(geom, branch, load, fraction, n=n)
    ratio = np.full((l_values.size, beta_values.size), -np.inf)
    feasible = np.zeros_like(ratio, dtype=bool)
    for i, l_over_a in enumerate(l_values):
        for j, beta in enumerate(beta_values):
            try:
                result = design_pipeline(
                    geom, CouplerAttachment(l_over_a * geom.a, beta), branch,
                    load, fraction, direction, n=n, curve_samples=curve_samples,
                    clearance=clearance, ratio_baseline=ratio_baseline, base=base)
            except MechanismError:
                continue
            ratio[i, j] = result.ratio
            feasible[i, j] = result.feasibility.ok and result.ratio >= threshold
    return SweepGrid(x_name="l_over_a", x_values=l_values,
                     y_name="beta_rad", y_values=beta_values,
                     ratio=ratio, feasible=feasible, threshold=threshold)


def sweep_family(b_over_a_values, l_values, beta_values, *,
                 a: float = 1.0, fraction: float = 0.4,
                 direction: Direction = Direction.CW, P: float = 1.0,
                 n: int = 1800, curve_samples: int = 360,
                 threshold: float = DEFAULT_THRESHOLD) -> list[FamilyEntry]:
    """Attachment sweeps for a family of slider-crank coupler ratios.

    Coupler ratios that do not assemble (b/a <= 1) yield an empty entry with
    no grid, mirroring the absence of any design solution there.
    """
    entries = []
    for b_over_a in b_over_a_values:
        if b_over_a <= 1.0:
            # no continuous crank rotation below the coupler ratio limit
            entries.append(FamilyEntry(float(b_over_a), None, 0.0, 0.0, -np.inf, None))
            continue
        geom = FourBarGeometry.slider_crank(a, b_over_a * a)
        grid = sweep_attachment(geom, Branch.OPEN, ConstantLoad(P), fraction,
                                direction, l_values, beta_values,
                                n=n, curve_samples=curve_samples, threshold=threshold)
        flat = int(np.argmax(grid.ratio))
        i, j = divmod(flat, grid.ratio.shape[1])
        best = float(grid.ratio[i, j])
        cell = (float(grid.x_values[i]), float(grid.y_values[j])) if np.isfinite(best) else None
        entries.append(FamilyEntry(float(b_over_a), grid, grid.feasible_area,
                                   grid.beta_extent, best, cell))
    return entries


def grashof_boundaries(c_over_a: float, b_values: np.ndarray,
                       d_values: np.ndarray) -> tuple[tuple[str, np.ndarray], ...]:
    """The three crank-rocker inequality boundaries as polylines in (b/a, d/a).

    With the crank normalized to 1 and the rocker fixed at c, each line marks
    one candidate longest link: b = c + d - 1, b + d = 1 + c, d = b + c - 1.
    """
    b_lo, b_hi = float(b_values.min()), float(b_values.max())
    d_lo, d_hi = float(d_values.min()), float(d_values.max())
    c = c_over_a
    lines = (
        ("longest-b", np.array([[c + d_lo - 1.0, d_lo], [c + d_hi - 1.0, d_hi]])),
        ("longest-c", np.array([[b_lo, 1.0 + c - b_lo], [b_hi, 1.0 + c - b_hi]])),
        ("longest-d", np.array([[b_lo, b_lo + c - 1.0], [b_hi, b_hi + c - 1.0]])),
    )
    return lines


@dataclass(frozen=True)
class AttachmentSearch:
    """Sub-sweep used to score one link-ratio cell by its best attachment."""

    l_max_over_a: float = 8.0
    l_steps: int = 17
    beta_steps: int = 17
    n: int = 720
    curve_samples: int = 360

    def l_values(self) -> np.ndarray:
        return np.linspace(0.0, self.l_max_over_a, self.l_steps)

    def beta_values(self) -> np.ndarray:
        return np.linspace(0.0, 2.0 * np.pi, self.beta_steps, endpoint=False)


def rocker_solution_space(c_over_a: float, b_values, d_values, *,
                          a: float = 1.0, fraction: float = 0.4,
                          direction: Direction = Direction.CW, P: float = 1.0,
                          threshold: float = DEFAULT_THRESHOLD,
                          search: AttachmentSearch | None = None,
                          branch: Branch = Branch.OPEN) -> SolutionSpace:
    """Scan the (b/a, d/a) plane for workable rocker-crank dimensions.

    A cell is feasible when it satisfies the crank-rocker Grashof conditions
    and its best min-net-torque ratio over a coarse attachment sub-sweep
    reaches the threshold.  How to judge a cell is not unique; best-over-
    attachment matches reading the solution space as "achievable designs".
    """
    if c_over_a <= 1.0:
        raise ConfigError(f"transmission ratio c/a must exceed 1, got {c_over_a:g}")
    if search is None:
        search = AttachmentSearch()
    b_values = np.asarray(b_values, dtype=float)
    d_values = np.asarray(d_values, dtype=float)
    grashof_ok = np.zeros((b_values.size, d_values.size), dtype=bool)
    best_ratio = np.full_like(grashof_ok, -np.inf, dtype=float)
    feasible = np.zeros_like(grashof_ok)
    sub_l = search.l_values()
    sub_beta = search.beta_values()
    for i, b_over_a in enumerate(b_values):
        for j, d_over_a in enumerate(d_values):
            try:
                geom = FourBarGeometry.rocker_crank(a, b_over_a * a, c_over_a * a,
                                                    d_over_a * a)
            except MechanismError:
                continue
            if not grashof_check(geom).valid:
                continue
            grashof_ok[i, j] = True
            grid = sweep_attachment(geom, branch, ConstantLoad(P), fraction,
                                    direction, sub_l, sub_beta,
                                    n=search.n, curve_samples=search.curve_samples,
                                    threshold=threshold)
            best = float(grid.ratio.max())
            best_ratio[i, j] = best
            feasible[i, j] = bool(grid.feasible.any())
    return SolutionSpace(
        c_over_a=c_over_a, b_values=b_values, d_values=d_values,
        grashof_ok=grashof_ok, best_ratio=best_ratio, feasible=feasible,
        boundaries=grashof_boundaries(c_over_a, b_values, d_values),
        threshold=threshold,
    )
