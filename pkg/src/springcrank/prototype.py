"""Torque prediction for the spring-actuated bench prototype.

The slider is driven by two pre-tensioned linear springs, one per
half-cycle: the first acts while the crank travels from 0 to pi (clockwise),
the second from pi back to the start.  Each delivers
P = k_a * (pretension - slider travel since its half-cycle began), clamped
at zero because a slack spring cannot push.  The output torque then follows
the usual kinematic + placed-spring superposition.

Profiles are reported against the travel angle (the amount of crank rotation
since the start), so the emitted curve reads like the bench measurement.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DataError
from .geometry import (CouplerAttachment, Direction, FourBarGeometry,
                       coupler_point, coupler_point_velocity, slider_position,
                       slider_velocity_ratio)
from .numerics import theta_grid, wrap_angle
from .placement import SpringDesign
from .torque import SpringActuatedLoad, TorqueProfile


def _internal_angle(travel):
    """Crank angle in the fixed frame after clockwise travel by ``travel``."""
    return wrap_angle(-np.asarray(travel, dtype=float))


def _actuation_force(geom: FourBarGeometry, load: SpringActuatedLoad, travel):
    """Per-sample driving force of the active actuation spring, clamped at 0."""
    travel = np.asarray(travel, dtype=float)
    u = slider_position(geom, _internal_angle(travel))
    u_start = geom.a + geom.b          # travel 0: crank fully extended
    u_half = geom.b - geom.a           # travel pi: folded dead center
    moved = np.where(travel < np.pi, u_start - u, u - u_half)
    return np.maximum(load.k_a * (load.pretension - moved), 0.0)


def prototype_torque_profile(geom: FourBarGeometry, attach: CouplerAttachment,
                             design: SpringDesign, load: SpringActuatedLoad,
                             n: int = 3600) -> TorqueProfile:
    """Predicted crank torque of the prototype over one clockwise revolution.

    ``theta`` in the result is the travel angle.  T_min is refined by a
    bounded scalar minimization around every sampled local minimum, so it is
    resolution-independent well below the grid spacing.
    """
    travel = theta_grid(n)
    theta_int = _internal_angle(travel)
    du = slider_velocity_ratio(geom, theta_int)
    P = _actuation_force(geom, load, travel)
    T_kin = P * np.abs(du)

    pts = coupler_point(geom, attach, theta_int)
    vel = coupler_point_velocity(geom, attach, theta_int)
    rel = pts - np.asarray(design.grounding)
    lengths = np.hypot(rel[:, 0], rel[:, 1])
    dl_dtheta = (rel[:, 0] * vel[:, 0] + rel[:, 1] * vel[:, 1]) / lengths
    # travel is clockwise: dl/ds = -dl/dtheta
    T_spring = design.stiffness * (lengths - design.rest_length) * dl_dtheta
    T_total = T_kin + T_spring

    T_min, theta_at_min = _refined_minimum(geom, attach, design, load, travel, T_total)
    i_min = int(np.argmin(T_total))
    if T_total[i_min] < T_min:
        T_min, theta_at_min = float(T_total[i_min]), float(travel[i_min])
    return TorqueProfile(
        direction=Direction.CW, theta=travel, T_kin=T_kin, T_spring=T_spring,
        T_total=T_total, spring_lengths=lengths,
        T_min=T_min, theta_at_min=theta_at_min,
        T_kin_max=float(T_kin.max()), T_total_max=float(T_total.max()),
        ratio=T_min / float(T_kin.max()), ratio_baseline="kinematic",
    )


def _total_at(geom, attach, design, load, travel: float) -> float:
    theta_int = float(_internal_angle(travel))
    du = float(slider_velocity_ratio(geom, theta_int))
    P = float(_actuation_force(geom, load, travel))
    p = coupler_point(geom, attach, theta_int)
    v = coupler_point_velocity(geom, attach, theta_int)
    rx, ry = p[0] - design.grounding[0], p[1] - design.grounding[1]
    l = float(np.hypot(rx, ry))
    dl = float((rx * v[0] + ry * v[1]) / l)
    return P * abs(du) + design.stiffness * (l - design.rest_length) * dl


def _refined_minimum(geom, attach, design, load, travel, T_total):
    """Minimize the continuous model inside every sampled local-minimum bracket."""
    n = len(travel)
    step = 2.0 * np.pi / n
    prev = np.roll(T_total, 1)
    nxt = np.roll(T_total, -1)
    local_min = np.nonzero((T_total <= prev) & (T_total <= nxt))[0]
    f = lambda s: _total_at(geom, attach, design, load, s)
    best_val = np.inf
    best_arg = 0.0
    for i in local_min:
        lo = float(travel[i]) - step
        hi = float(travel[i]) + step
        res = minimize_scalar(f, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12})
        if res.fun < best_val:
            best_val = float(res.fun)
            best_arg = wrap_angle(float(res.x))
    return best_val, best_arg


@dataclass(frozen=True)
class MeasuredSeries:
    """Bench measurement: crank travel [deg] vs torque, angles strictly increasing."""

    angle_deg: np.ndarray
    torque: np.ndarray


def load_measured_series(path) -> MeasuredSeries:
    """Read a delimited text file of (angle_deg, torque) rows.

    Accepts comma- or whitespace-separated values and '#' comments.
    Raises DataError on parse failures, non-finite values, or non-increasing
    angles.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read measured file {path}: {exc}") from exc
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.replace(",", " ").split()
        if len(parts) != 2:
            raise DataError(f"{path}:{lineno}: expected two columns, got {len(parts)}")
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from exc
    if len(rows) < 2:
        raise DataError(f"{path}: need at least two data rows")
    data = np.asarray(rows)
    if not np.all(np.isfinite(data)):
        raise DataError(f"{path}: non-finite values in measured series")
    if np.any(np.diff(data[:, 0]) <= 0.0):
        raise DataError(f"{path}: crank angles must be strictly increasing")
    return MeasuredSeries(angle_deg=data[:, 0], torque=data[:, 1])


@dataclass(frozen=True)
class MeasuredComparison:
    """Model-vs-measurement statistics on the overlapping angle range."""

    n_points: int
    rms: float
    mean_offset: float     # mean(measured - model); friction shows up negative


def compare_measured(profile: TorqueProfile, measured: MeasuredSeries) -> MeasuredComparison:
    """Interpolate the measurement onto the model grid and report statistics.

    Statistics only, no pass/fail: friction is deliberately absent from the
    model, so a constant-ish negative offset is the expected signature.
    """
    model_deg = np.degrees(profile.theta)
    lo, hi = float(measured.angle_deg[0]), float(measured.angle_deg[-1])
    mask = (model_deg >= lo) & (model_deg <= hi)
    if not np.any(mask):
        raise DataError("measured series does not overlap the model grid")
    interp = np.interp(model_deg[mask], measured.angle_deg, measured.torque)
    diff = interp - profile.T_total[mask]
    return MeasuredComparison(
        n_points=int(np.count_nonzero(mask)),
        rms=float(np.sqrt(np.mean(diff * diff))),
        mean_offset=float(np.mean(diff)),
    )
