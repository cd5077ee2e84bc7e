"""Crank torque assembly: kinematic transmission, spring contribution, totals.

Sign conventions.  Torque is measured along the travel direction, so a
positive total torque drives the crank the way it is meant to turn.  The
reciprocating input of constant magnitude P always pushes along the input
link's instantaneous motion (alternating actuation), which makes the
kinematic contribution P * |du/dtheta|, never negative.  The spring
contributes -K (l - l0) dl/ds with s the arc parameter along travel
(dl/ds = -dl/dtheta for clockwise travel): positive while releasing,
negative while storing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import TotalInfeasibleError
from .geometry import (Branch, CouplerAttachment, CouplerCurve, Direction,
                       FourBarGeometry, coupler_curve, coupler_point,
                       singular_angles, velocity_ratio)
from .numerics import bisect_signed_batch, contiguous_runs, theta_grid, wrap_angle
from .placement import (FeasibilityReport, SizingInput, SpringDesign,
                        SpringLengthProfile, TransitionPoints,
                        feasibility_conditions, grounding_point, relaxed_length,
                        size_spring, spring_length_profile, transition_points)

RATIO_KINEMATIC = "kinematic"   # T_min / max kinematic torque (default)
RATIO_TOTAL = "total"           # T_min / max total torque (alternative reading)


@dataclass(frozen=True)
class ConstantLoad:
    """Reciprocating input of constant magnitude (force or torque)."""

    P: float

    def __post_init__(self):
        if self.P <= 0.0:
            raise ValueError(f"input magnitude must be positive, got {self.P}")


@dataclass(frozen=True)
class SpringActuatedLoad:
    """Slider driven by alternating pre-tensioned linear springs."""

    k_a: float
    pretension: float

    def __post_init__(self):
        if self.k_a <= 0.0 or self.pretension <= 0.0:
            raise ValueError("actuation spring needs k_a > 0 and pretension > 0")


InputLoad = Union[ConstantLoad, SpringActuatedLoad]


@dataclass(frozen=True)
class EnergyInterval:
    """One storage or release arc (start -> end along travel) and its energy."""

    theta_start: float
    theta_end: float
    kind: str              # "release" | "store"
    energy: float


@dataclass(frozen=True)
class TorqueProfile:
    """Sampled torque decomposition over one crank revolution."""

    direction: Direction
    theta: np.ndarray
    T_kin: np.ndarray
    T_spring: np.ndarray
    T_total: np.ndarray
    spring_lengths: np.ndarray
    T_min: float
    theta_at_min: float
    T_kin_max: float
    T_total_max: float
    ratio: float
    ratio_baseline: str
    energy_intervals: tuple[EnergyInterval, ...] = ()


@dataclass(frozen=True)
class UnfavorableRegions:
    """Crank arcs where the kinematic torque falls below the required load."""

    intervals: tuple[tuple[float, float], ...]   # ascending-theta (start, end), end may wrap
    theta_s: float                               # width of the largest arc


@dataclass(frozen=True)
class PipelineResult:
    """Everything the placement-and-sizing pipeline produced."""

    geometry: FourBarGeometry
    attachment: CouplerAttachment
    branch: Branch
    direction: Direction
    load: ConstantLoad
    fraction: float
    singular_thetas: np.ndarray
    regions: UnfavorableRegions
    sizing: SizingInput
    curve: CouplerCurve
    transitions: TransitionPoints
    spring: SpringDesign
    profile: SpringLengthProfile
    feasibility: FeasibilityReport
    torque: TorqueProfile

    @property
    def ratio(self) -> float:
        return self.torque.ratio


def kinematic_torque(geom: FourBarGeometry, load: ConstantLoad, theta,
                     branch: Branch = Branch.OPEN):
    """Transmitted crank torque P * |du/dtheta| for the alternating input.

    Identical for both travel directions: the input always acts along the
    instantaneous motion of the input link.
    """
    return load.P * np.abs(velocity_ratio(geom, theta, branch))


def spring_torque(design: SpringDesign, lengths, dl_ds):
    """Spring torque -K (l - l0) dl/ds along the travel direction."""
    return -design.stiffness * (np.asarray(lengths) - design.rest_length) * np.asarray(dl_ds)


def unfavorable_regions(geom: FourBarGeometry, load: ConstantLoad, T_load: float,
                        n: int = 3600, branch: Branch = Branch.OPEN,
                        T_kin: np.ndarray | None = None) -> UnfavorableRegions:
    """Arcs with T_kin < T_load, boundaries refined by bisection.

    ``T_kin`` sampled on theta_grid(n) may be passed in to avoid
    recomputation.  Raises TotalInfeasibleError when the load exceeds the
    transmissible torque everywhere on the cycle.
    """
    if T_load <= 0.0:
        raise ValueError(f"T_load must be positive, got {T_load}")
    thetas = theta_grid(n)
    if T_kin is None:
        T_kin = kinematic_torque(geom, load, thetas, branch)
    if float(T_kin.max()) < T_load:
        raise TotalInfeasibleError(
            f"required torque {T_load:g} exceeds the transmissible maximum "
            f"{float(T_kin.max()):g} everywhere")
    runs = contiguous_runs(T_kin < T_load)
    if not runs:
        return UnfavorableRegions(intervals=(), theta_s=0.0)
    step = 2.0 * np.pi / n

    def gap(theta):
        return kinematic_torque(geom, load, theta, branch) - T_load

    # one batch: per run, the entering edge (outside: gap >= 0) and the
    # leaving edge (inside: gap < 0)
    lows, negs = [], []
    for run in runs:
        lows.append(float(thetas[(int(run[0]) - 1) % n]))
        negs.append(False)
        lows.append(float(thetas[int(run[-1])]))
        negs.append(True)
    lows = np.array(lows)
    edges = bisect_signed_batch(gap, lows, lows + step, negs, tol=1e-10)
    intervals = []
    for k in range(len(runs)):
        start, end = float(edges[2 * k]), float(edges[2 * k + 1])
        if end < start:
            end += 2.0 * np.pi
        intervals.append((wrap_angle(start), wrap_angle(start) + (end - start)))
    widths = [end - start for start, end in intervals]
    return UnfavorableRegions(intervals=tuple(intervals), theta_s=max(widths))


def _spring_torque_on_grid(design: SpringDesign, profile: SpringLengthProfile,
                           direction: Direction) -> np.ndarray:
    dl_ds = direction.dtheta_sign * profile.dl_dtheta
    return spring_torque(design, profile.lengths, dl_ds)


def _energy_intervals(geom: FourBarGeometry, attach: CouplerAttachment, branch: Branch,
                      design: SpringDesign, profile: SpringLengthProfile,
                      direction: Direction) -> tuple[EnergyInterval, ...]:
    """Per-arc stored/released energy from the potential at the refined extrema."""
    extrema = list(profile.extrema)
    if len(extrema) < 2:
        return ()
    if direction is Direction.CW:
        extrema = extrema[::-1]

    def potential(theta: float) -> float:
        p = coupler_point(geom, attach, theta, branch)
        l = float(np.hypot(p[0] - design.grounding[0], p[1] - design.grounding[1]))
        return 0.5 * design.stiffness * (l - design.rest_length) ** 2

    vals = [potential(t) for t, _ in extrema]
    out = []
    k = len(extrema)
    for idx in range(k):
        nxt = (idx + 1) % k
        theta0, kind0 = extrema[idx]
        theta1, _ = extrema[nxt]
        drop = vals[idx] - vals[nxt]
        kind = "release" if kind0 == "max" else "store"
        out.append(EnergyInterval(theta0, theta1, kind, abs(drop)))
    return tuple(out)


def total_torque_profile(geom: FourBarGeometry, attach: CouplerAttachment, branch: Branch,
                         load: ConstantLoad, design: SpringDesign, direction: Direction,
                         n: int = 3600, ratio_baseline: str = RATIO_KINEMATIC,
                         profile: SpringLengthProfile | None = None) -> TorqueProfile:
    """Assemble T_total = T_kin + T_spring on the cycle grid.

    ``ratio`` divides the total-torque minimum by the kinematic maximum
    (default) or by the total maximum when ratio_baseline="total".
    A precomputed spring-length profile on the same grid may be passed in.
    """
    if profile is None:
        profile = spring_length_profile(geom, attach, branch, design.grounding, n)
    thetas = profile.theta
    T_kin = np.asarray(kinematic_torque(geom, load, thetas, branch))
    T_spring = _spring_torque_on_grid(design, profile, direction)
    T_total = T_kin + T_spring
    i_min = int(np.argmin(T_total))
    T_kin_max = float(T_kin.max())
    T_total_max = float(T_total.max())
    baseline = T_kin_max if ratio_baseline == RATIO_KINEMATIC else T_total_max
    return TorqueProfile(
        direction=direction, theta=thetas, T_kin=T_kin, T_spring=T_spring,
        T_total=T_total, spring_lengths=profile.lengths,
        T_min=float(T_total[i_min]), theta_at_min=float(thetas[i_min]),
        T_kin_max=T_kin_max, T_total_max=T_total_max,
        ratio=float(T_total[i_min]) / baseline, ratio_baseline=ratio_baseline,
        energy_intervals=_energy_intervals(geom, attach, branch, design, profile, direction),
    )


@dataclass(frozen=True)
class TransmissionAnalysis:
    """Attachment-independent part of the pipeline: singularities, unfavorable
    regions and the resulting sizing requirement for one geometry/load/fraction."""

    singular_thetas: np.ndarray
    T_kin_max: float
    regions: UnfavorableRegions
    sizing: SizingInput


def transmission_analysis(geom: FourBarGeometry, branch: Branch, load: ConstantLoad,
                          fraction: float, n: int = 3600) -> TransmissionAnalysis:
    """Locate singularities and unfavorable regions; derive the sizing input.

    This prefix of the design pipeline depends only on the base mechanism,
    never on the spring attachment, so sweeps compute it once per geometry.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"T_load fraction must lie in (0, 1), got {fraction}")
    sing = singular_angles(geom, branch, n_grid=n)
    T_kin = np.asarray(kinematic_torque(geom, load, theta_grid(n), branch))
    T_kin_max = float(T_kin.max())
    T_load = fraction * T_kin_max
    regions = unfavorable_regions(geom, load, T_load, n=n, branch=branch, T_kin=T_kin)
    return TransmissionAnalysis(
        singular_thetas=sing, T_kin_max=T_kin_max, regions=regions,
        sizing=SizingInput(T_load=T_load, theta_s=regions.theta_s))


def design_pipeline(geom: FourBarGeometry, attach: CouplerAttachment, branch: Branch,
                    load: ConstantLoad, fraction: float, direction: Direction,
                    n: int = 3600, curve_samples: int = 720,
                    clearance: float | None = None,
                    ratio_baseline: str = RATIO_KINEMATIC,
                    base: TransmissionAnalysis | None = None) -> PipelineResult:
    """Run the whole placement-and-sizing chain for one candidate design.

    Steps: kinematic torque -> unfavorable regions at T_load =
    fraction * T_kin_max -> coupler curve -> transition points -> grounding ->
    spring length profile -> relaxed length -> stiffness -> feasibility
    conditions -> total torque profile.  A design failing the feasibility
    conditions still completes (the report says why); geometric
    impossibilities raise.

    ``base`` may carry a precomputed transmission_analysis for the same
    (geom, branch, load, fraction, n); sweeps use this to share the
    attachment-independent prefix without changing any value.
    """
    if base is None:
        base = transmission_analysis(geom, branch, load, fraction, n=n)
    sing = base.singular_thetas
    regions = base.regions
    sizing = base.sizing
    curve = coupler_curve(geom, attach, branch, n=curve_samples)
    transitions = transition_points(curve)
    grounding = grounding_point(curve, transitions.s1, transitions.s2, clearance)
    profile = spring_length_profile(geom, attach, branch, grounding, n)
    design = SpringDesign(
        grounding=(float(grounding[0]), float(grounding[1])),
        stiffness=size_spring(sizing, profile),
        rest_length=relaxed_length(profile),
    )
    feas = feasibility_conditions(profile, sing, direction)
    torque = total_torque_profile(geom, attach, branch, load, design, direction,
                                  n=n, ratio_baseline=ratio_baseline, profile=profile)
    return PipelineResult(
        geometry=geom, attachment=attach, branch=branch, direction=direction,
        load=load, fraction=fraction, singular_thetas=sing, regions=regions,
        sizing=sizing, curve=curve, transitions=transitions, spring=design,
        profile=profile, feasibility=feas, torque=torque,
    )
