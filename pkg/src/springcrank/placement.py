"""Spring placement and sizing on a coupler curve.

The placement recipe: the two curve points with the longest mutual distance
are the transition points of the elastic cycle (the spring is longest, and
switches from storing to releasing, when the attachment passes them).  The
spring is grounded at their midpoint, or, when the curve comes too close to
the midpoint, at the nearest clear point on the perpendicular bisector.  The
relaxed length equals the closest approach over the cycle, so the spring
carries no pretension.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateCurveError, NumericalError, PlacementError,
                     SizingError)
from .geometry import (Branch, CouplerAttachment, CouplerCurve, Direction,
                       FourBarGeometry, coupler_point_and_velocity)
from .numerics import angle_in_arc, bisect_signed_batch, theta_grid, wrap_angle

DEFAULT_CLEARANCE_FACTOR = 0.05
# Margin (rad) for "strictly inside a release arc": keeps refinement noise at
# the arc boundaries from flipping the boundary cases either way.
ARC_MARGIN = 1e-6

MAX_KIND = "max"
MIN_KIND = "min"


@dataclass(frozen=True)
class SpringDesign:
    """A placed linear spring: anchor point, stiffness, relaxed length."""

    grounding: tuple[float, float]
    stiffness: float
    rest_length: float

    def __post_init__(self):
        if self.stiffness < 0.0 or self.rest_length < 0.0:
            raise SizingError("spring stiffness and rest length must be >= 0")


@dataclass(frozen=True)
class SpringLengthProfile:
    """Spring length over one crank revolution, with located extrema.

    ``extrema`` holds (theta, kind) pairs, kind in {"max", "min"}, sorted by
    angle; they alternate around the cycle.  ``l_min``/``l_max`` are the
    sampled extremes (the grid is what every downstream energy identity uses).
    """

    theta: np.ndarray
    lengths: np.ndarray
    dl_dtheta: np.ndarray
    l_min: float
    l_max: float
    extrema: tuple[tuple[float, str], ...]
    length_scale: float

    @property
    def maxima(self) -> list[float]:
        return [t for t, k in self.extrema if k == MAX_KIND]

    @property
    def minima(self) -> list[float]:
        return [t for t, k in self.extrema if k == MIN_KIND]


@dataclass(frozen=True)
class SizingInput:
    """Required output torque and the widest crank arc it must be carried over."""

    T_load: float
    theta_s: float

    def __post_init__(self):
        if self.T_load <= 0.0:
            raise SizingError(f"T_load must be positive, got {self.T_load}")
        if not 0.0 <= self.theta_s < 2.0 * np.pi:
            raise SizingError(f"theta_s must lie in [0, 2*pi), got {self.theta_s}")


@dataclass(frozen=True)
class TransitionPoints:
    s1: np.ndarray
    s2: np.ndarray
    indices: tuple[int, int]
    distance: float


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of the two placement conditions.

    condition1: the elastic cycle has exactly two store-to-release transition
    points (spring-length maxima), one available for each singularity.
    condition2: both singular crank angles fall strictly inside energy
    release arcs for the requested travel direction.
    """

    ok: bool
    condition1: bool
    condition2: bool
    release_intervals: tuple[tuple[float, float], ...]
    n_transitions: int


def transition_points(curve: CouplerCurve) -> TransitionPoints:
    """Sample pair with the longest mutual distance (exhaustive O(N^2) scan).

    Ties resolve to the lowest (i, j) pair in row-major order, so the result
    is deterministic for symmetric curves.  (The distance matrix is
    symmetric, so the first flat argmax of the full matrix is exactly the
    row-major-lowest upper-triangle maximizer.)  Raises DegenerateCurveError
    when the whole curve collapses within 1e-9 * length_scale.
    """
    pts = curve.points
    n = len(pts)
    x = pts[:, 0]
    y = pts[:, 1]
    d2 = x[:, None] - x[None, :]
    np.multiply(d2, d2, out=d2)
    dy = y[:, None] - y[None, :]
    np.multiply(dy, dy, out=dy)
    d2 += dy
    flat = int(np.argmax(d2))
    i, j = divmod(flat, n)
    dist = float(np.sqrt(d2[i, j]))
    if dist < 1e-9 * curve.length_scale:
        raise DegenerateCurveError("curve is point-like; no transition pair exists")
    if i > j:
        i, j = j, i
    return TransitionPoints(pts[i].copy(), pts[j].copy(), (i, j), dist)


def _min_distance(pts: np.ndarray, point: np.ndarray) -> float:
    return float(np.min(np.hypot(pts[:, 0] - point[0], pts[:, 1] - point[1])))


def grounding_point(curve: CouplerCurve, s1: np.ndarray, s2: np.ndarray,
                    clearance: float | None = None) -> np.ndarray:
    """Spring anchor: transition midpoint, or nearest clear bisector point.

    The midpoint of s1-s2 is used when every curve sample stays at least
    ``clearance`` away from it.  Otherwise the perpendicular bisector is
    searched symmetrically in both normal directions for the smallest offset
    that satisfies the clearance; an exact tie goes to the positive-normal
    side (s2 - s1 rotated +90 degrees).

    Raises PlacementError when no offset within 100 * length_scale clears.
    """
    scale = curve.length_scale
    if clearance is None:
        clearance = DEFAULT_CLEARANCE_FACTOR * scale
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    chord = s2 - s1
    chord_len = float(np.hypot(*chord))
    if chord_len == 0.0:
        raise PlacementError("transition points coincide")
    mid = 0.5 * (s1 + s2)
    pts = curve.points
    if _min_distance(pts, mid) >= clearance:
        return mid
    normal = np.array([-chord[1], chord[0]]) / chord_len
    step = clearance / 4.0 if clearance > 0.0 else 0.01 * scale
    limit = 100.0 * scale

    def first_clear_offset(side: float) -> float | None:
        t = 0.0
        while t < limit:
            t_next = t + step
            if _min_distance(pts, mid + side * t_next * normal) >= clearance:
                # tighten to the transition, keep the passing end
                lo, hi = t, t_next
                for _ in range(80):
                    m = 0.5 * (lo + hi)
                    if _min_distance(pts, mid + side * m * normal) >= clearance:
                        hi = m
                    else:
                        lo = m
                    if hi - lo < 1e-12 * scale:
                        break
                return hi
            t = t_next
        return None

    t_pos = first_clear_offset(+1.0)
    t_neg = first_clear_offset(-1.0)
    if t_pos is None and t_neg is None:
        raise PlacementError(
            f"no bisector point within {limit:g} clears the curve by {clearance:g}")
    if t_neg is None or (t_pos is not None and t_pos <= t_neg):
        return mid + t_pos * normal
    return mid - t_neg * normal


def spring_length_profile(geom: FourBarGeometry, attach: CouplerAttachment,
                          branch: Branch, grounding, n: int = 3600) -> SpringLengthProfile:
    """Deflected spring length l(theta) = |attachment - grounding| on the cycle grid.

    The analytic rate dl/dtheta = ((p - g) . dp/dtheta) / l locates extrema by
    sign change, refined by bisection to 1e-10 rad.

    Raises NumericalError when the grounding touches the curve (l -> 0).
    """
    grounding = np.asarray(grounding, dtype=float)
    thetas = theta_grid(n)
    pts, vel = coupler_point_and_velocity(geom, attach, thetas, branch)
    rel = pts - grounding
    lengths = np.hypot(rel[:, 0], rel[:, 1])
    if np.min(lengths) < 1e-12 * geom.a:
        raise NumericalError("grounding point coincides with a curve point")
    dl = (rel[:, 0] * vel[:, 0] + rel[:, 1] * vel[:, 1]) / lengths

    def rate(theta):
        p, v = coupler_point_and_velocity(geom, attach, theta, branch)
        r = p - grounding
        return (r[..., 0] * v[..., 0] + r[..., 1] * v[..., 1]) / np.hypot(r[..., 0], r[..., 1])

    extrema = _locate_extrema(rate, dl, thetas)
    return SpringLengthProfile(
        theta=thetas, lengths=lengths, dl_dtheta=dl,
        l_min=float(lengths.min()), l_max=float(lengths.max()),
        extrema=tuple(extrema), length_scale=geom.a,
    )


def _locate_extrema(rate, dl: np.ndarray, thetas: np.ndarray) -> list[tuple[float, str]]:
    """Sign transitions of dl/dtheta, bisected between nonzero samples."""
    nonzero = np.nonzero(dl != 0.0)[0]
    if nonzero.size == 0:
        return []
    pos = dl[nonzero] > 0.0
    flips = np.nonzero(pos != np.roll(pos, -1))[0]
    if flips.size == 0:
        return []
    i = nonzero[flips]
    j = nonzero[(flips + 1) % nonzero.size]
    los = thetas[i]
    his = np.where(j > i, thetas[j], thetas[j] + 2.0 * np.pi)
    refined = bisect_signed_batch(rate, los, his, ~pos[flips], tol=1e-10)
    out = [(float(wrap_angle(t)), MAX_KIND if up else MIN_KIND)
           for t, up in zip(refined, pos[flips])]
    out.sort(key=lambda e: e[0])
    return out


def relaxed_length(profile: SpringLengthProfile) -> float:
    """No-pretension relaxed length: the closest approach over the cycle."""
    return profile.l_min


def size_spring(sizing: SizingInput, profile: SpringLengthProfile) -> float:
    """Stiffness storing exactly the crossing energy over the length swing.

    K = 2 * W / (l_max - l_min)^2 with W = T_load * theta_s, so the spring
    holds precisely the energy needed to drag the load across the widest
    unfavorable arc.  theta_s = 0 means no unfavorable region: K = 0.

    Raises SizingError when the length swing is below 1e-9 * length_scale.
    """
    if sizing.theta_s == 0.0:
        return 0.0
    swing = profile.l_max - profile.l_min
    if swing < 1e-9 * profile.length_scale:
        raise SizingError("spring length never changes; it cannot store energy")
    return 2.0 * sizing.T_load * sizing.theta_s / (swing * swing)


def release_intervals(profile: SpringLengthProfile,
                      direction: Direction) -> tuple[tuple[float, float], ...]:
    """Arcs (start, end), walked along the travel direction, where the spring
    releases energy: from each length maximum to the next minimum en route."""
    extrema = list(profile.extrema)
    k = len(extrema)
    if k < 2:
        return ()
    ccw = direction is Direction.CCW
    arcs = []
    for idx, (theta_m, kind) in enumerate(extrema):
        if kind != MAX_KIND:
            continue
        step = 1 if ccw else -1
        j = (idx + step) % k
        while extrema[j][1] != MIN_KIND and j != idx:
            j = (j + step) % k
        if extrema[j][1] == MIN_KIND:
            arcs.append((theta_m, extrema[j][0]))
    return tuple(arcs)


def feasibility_conditions(profile: SpringLengthProfile, singular_thetas,
                           direction: Direction) -> FeasibilityReport:
    """Check the two spring placement conditions for the travel direction.

    (1) exactly two store-to-release transition points per cycle, and
    (2) every singular angle strictly inside a release arc.
    """
    n_max = len(profile.maxima)
    condition1 = n_max == 2
    arcs = release_intervals(profile, direction)
    ccw = direction is Direction.CCW
    condition2 = len(arcs) > 0 and all(
        any(angle_in_arc(float(th), start, end, ccw, margin=ARC_MARGIN)
            for start, end in arcs)
        for th in np.atleast_1d(singular_thetas)
    )
    return FeasibilityReport(
        ok=condition1 and condition2,
        condition1=condition1,
        condition2=condition2,
        release_intervals=arcs,
        n_transitions=n_max,
    )
