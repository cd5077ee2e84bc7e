"""Closed-form kinematics of in-line slider-crank and rocker-crank four-bars.

Conventions (fixed for the whole package):

* Crank pivot at the origin, crank angle ``theta`` measured counterclockwise
  from the +x axis.  The slider axis (slider-crank) and the rocker pivot
  (rocker-crank, at ``(d, 0)``) both lie on the +x axis.
* ``A`` is the crank-coupler joint, ``B`` the coupler-slider (or
  coupler-rocker) joint.  The coupler axis angle ``gamma`` points from A
  toward B.
* A coupler attachment extends from A by ``l_ext`` at angle ``beta``
  measured counterclockwise from the A->B axis.
* The Open assembly branch keeps joint B on the left of the ray from the
  rocker pivot toward A, consistently for every crank angle.

All kinematic functions are pure and accept scalar or array ``theta``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import AssemblyError, GeometryError, RootError
from .numerics import TWO_PI, periodic_sign_change_roots, theta_grid

SLIDER_CRANK = "slider-crank"
ROCKER_CRANK = "rocker-crank"


class Branch(Enum):
    OPEN = "open"
    CROSSED = "crossed"


class Direction(Enum):
    """Crank travel direction. CW traverses the cycle at decreasing theta."""

    CW = "cw"
    CCW = "ccw"

    @property
    def dtheta_sign(self) -> float:
        """Sign of d(theta)/ds, with s the arc parameter along travel."""
        return -1.0 if self is Direction.CW else 1.0


@dataclass(frozen=True)
class FourBarGeometry:
    """Link lengths of a slider-crank {a, b} or rocker-crank {a, b, c, d}.

    a: crank, b: coupler, c: rocker (rocker-crank only), d: ground
    (rocker-crank only).  Lengths are unit-agnostic; ``a`` sets the scale
    used by every relative tolerance in the package.
    """

    kind: str
    a: float
    b: float
    c: float | None = None
    d: float | None = None

    def __post_init__(self):
        if self.kind not in (SLIDER_CRANK, ROCKER_CRANK):
            raise GeometryError(f"unknown mechanism kind {self.kind!r}")
        present = {"a": self.a, "b": self.b}
        if self.kind == ROCKER_CRANK:
            if self.c is None or self.d is None:
                raise GeometryError("rocker-crank requires c and d")
            present.update(c=self.c, d=self.d)
        else:
            if self.c is not None or self.d is not None:
                raise GeometryError("slider-crank takes only a and b")
        for name, value in present.items():
            if not np.isfinite(value) or value <= 0.0:
                raise GeometryError(f"link {name} must be strictly positive, got {value}")

    @classmethod
    def slider_crank(cls, a: float, b: float) -> "FourBarGeometry":
        return cls(SLIDER_CRANK, a, b)

    @classmethod
    def rocker_crank(cls, a: float, b: float, c: float, d: float) -> "FourBarGeometry":
        return cls(ROCKER_CRANK, a, b, c, d)

    @property
    def is_slider(self) -> bool:
        return self.kind == SLIDER_CRANK


@dataclass(frozen=True)
class CouplerAttachment:
    """Spring attachment on the extended coupler.

    l_ext: arm length from the crank-side coupler joint A.
    beta:  arm angle, counterclockwise from the A->B coupler axis.

    (Named ``l_ext`` to keep the extension length apart from the deflected
    spring length ``l`` used by the elastic model.)
    """

    l_ext: float
    beta: float

    def __post_init__(self):
        if not np.isfinite(self.l_ext) or self.l_ext < 0.0:
            raise GeometryError(f"l_ext must be >= 0, got {self.l_ext}")
        object.__setattr__(self, "beta", float(np.mod(self.beta, TWO_PI)))


@dataclass(frozen=True)
class MechanismState:
    """Kinematic snapshot at one crank angle."""

    theta: float
    u: float                      # slider position [L] or rocker angle [rad]
    du_dtheta: float
    attachment_point: tuple[float, float]
    attachment_velocity: tuple[float, float]   # d(point)/d(theta)


@dataclass(frozen=True)
class CouplerCurve:
    """Closed path of a coupler attachment over one crank revolution.

    ``theta`` is the uniform half-open grid on [0, 2*pi); ``points`` has
    shape (n, 2).  ``length_scale`` carries the crank length for relative
    tolerances downstream.
    """

    theta: np.ndarray
    points: np.ndarray
    closed: bool
    length_scale: float

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]


@dataclass(frozen=True)
class GrashofResult:
    valid: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.valid


# ---------------------------------------------------------------------------
# slider-crank kinematics
# ---------------------------------------------------------------------------

def _require_slider(geom: FourBarGeometry):
    if not geom.is_slider:
        raise GeometryError("operation requires a slider-crank geometry")
    if geom.b <= geom.a:
        raise GeometryError(
            f"slider-crank needs b > a for full rotation (a={geom.a}, b={geom.b})")


def _slider_w(geom: FourBarGeometry, theta):
    """Projection of the coupler on the slider axis: sqrt(b^2 - a^2 sin^2)."""
    s = geom.a * np.sin(theta)
    return np.sqrt(geom.b * geom.b - s * s)


def slider_position(geom: FourBarGeometry, theta):
    """In-line slider position u(theta) = a cos(theta) + sqrt(b^2 - a^2 sin^2(theta))."""
    _require_slider(geom)
    theta = np.asarray(theta, dtype=float)
    return geom.a * np.cos(theta) + _slider_w(geom, theta)


def slider_velocity_ratio(geom: FourBarGeometry, theta):
    """Analytic du/dtheta of the in-line slider-crank."""
    _require_slider(geom)
    theta = np.asarray(theta, dtype=float)
    w = _slider_w(geom, theta)
    return -geom.a * np.sin(theta) * (1.0 + geom.a * np.cos(theta) / w)


def _slider_coupler_angle(geom: FourBarGeometry, theta):
    """Coupler axis angle gamma (A toward slider pin) and d(gamma)/d(theta)."""
    w = _slider_w(geom, theta)
    gamma = np.arctan2(-geom.a * np.sin(theta), w)
    dgamma = -geom.a * np.cos(theta) / w
    return gamma, dgamma


# ---------------------------------------------------------------------------
# rocker-crank kinematics
# ---------------------------------------------------------------------------

def _require_rocker(geom: FourBarGeometry):
    if geom.is_slider:
        raise GeometryError("operation requires a rocker-crank geometry")


def rocker_state(geom: FourBarGeometry, theta, branch: Branch = Branch.OPEN):
    """Rocker angle phi and coupler axis angle gamma at crank angle theta.

    Solves the b-c-g triangle on the diagonal g = |A - Q| (Q the rocker
    pivot).  The Open branch takes phi = delta - psi, which keeps B on the
    left of the ray Q->A for every crank angle; Crossed takes the mirror
    solution.

    Raises AssemblyError when the triangle inequality fails at any requested
    angle (non-Grashof input slipped through).
    """
    _require_rocker(geom)
    theta = np.asarray(theta, dtype=float)
    a, b, c, d = geom.a, geom.b, geom.c, geom.d
    ax = a * np.cos(theta)
    ay = a * np.sin(theta)
    gx = ax - d
    gy = ay
    g = np.hypot(gx, gy)
    if np.any(g > b + c) or np.any(g < abs(b - c)):
        raise AssemblyError(
            "coupler-rocker triangle cannot close over the crank circle "
            f"(a={a}, b={b}, c={c}, d={d})")
    delta = np.arctan2(gy, gx)
    cos_psi = (c * c + g * g - b * b) / (2.0 * c * g)
    psi = np.arccos(np.clip(cos_psi, -1.0, 1.0))
    phi = delta - psi if branch is Branch.OPEN else delta + psi
    bx = d + c * np.cos(phi)
    by = c * np.sin(phi)
    gamma = np.arctan2(by - ay, bx - ax)
    return phi, gamma


def rocker_velocity_ratio(geom: FourBarGeometry, theta, branch: Branch = Branch.OPEN):
    """Analytic d(phi)/d(theta): a sin(gamma - theta) / (c sin(gamma - phi))."""
    theta = np.asarray(theta, dtype=float)
    phi, gamma = rocker_state(geom, theta, branch)
    return geom.a * np.sin(gamma - theta) / (geom.c * np.sin(gamma - phi))


def _rocker_coupler_angle_rate(geom: FourBarGeometry, theta, branch: Branch):
    theta = np.asarray(theta, dtype=float)
    phi, gamma = rocker_state(geom, theta, branch)
    dgamma = geom.a * np.sin(phi - theta) / (geom.b * np.sin(gamma - phi))
    return gamma, dgamma


# ---------------------------------------------------------------------------
# generic over both families
# ---------------------------------------------------------------------------

def velocity_ratio(geom: FourBarGeometry, theta, branch: Branch = Branch.OPEN):
    """du/dtheta of the reciprocating coordinate (slider position or rocker angle)."""
    if geom.is_slider:
        return slider_velocity_ratio(geom, theta)
    return rocker_velocity_ratio(geom, theta, branch)


def input_coordinate(geom: FourBarGeometry, theta, branch: Branch = Branch.OPEN):
    """The reciprocating input coordinate u(theta)."""
    if geom.is_slider:
        return slider_position(geom, theta)
    return rocker_state(geom, theta, branch)[0]


def _coupler_frame(geom: FourBarGeometry, theta, branch: Branch):
    """Crank joint A, dA/dtheta, coupler angle gamma and dgamma/dtheta."""
    theta = np.asarray(theta, dtype=float)
    ax = geom.a * np.cos(theta)
    ay = geom.a * np.sin(theta)
    dax = -geom.a * np.sin(theta)
    day = geom.a * np.cos(theta)
    if geom.is_slider:
        _require_slider(geom)
        gamma, dgamma = _slider_coupler_angle(geom, theta)
    else:
        gamma, dgamma = _rocker_coupler_angle_rate(geom, theta, branch)
    return (ax, ay), (dax, day), gamma, dgamma


def coupler_point(geom: FourBarGeometry, attach: CouplerAttachment, theta,
                  branch: Branch = Branch.OPEN):
    """Attachment point A + l_ext * (cos(gamma+beta), sin(gamma+beta)); shape (..., 2)."""
    (ax, ay), _, gamma, _ = _coupler_frame(geom, theta, branch)
    ang = gamma + attach.beta
    return np.stack([ax + attach.l_ext * np.cos(ang),
                     ay + attach.l_ext * np.sin(ang)], axis=-1)


def coupler_point_velocity(geom: FourBarGeometry, attach: CouplerAttachment, theta,
                           branch: Branch = Branch.OPEN):
    """d(attachment point)/d(theta); shape (..., 2)."""
    _, (dax, day), gamma, dgamma = _coupler_frame(geom, theta, branch)
    ang = gamma + attach.beta
    return np.stack([dax - attach.l_ext * dgamma * np.sin(ang),
                     day + attach.l_ext * dgamma * np.cos(ang)], axis=-1)


def coupler_point_and_velocity(geom: FourBarGeometry, attach: CouplerAttachment, theta,
                               branch: Branch = Branch.OPEN):
    """Attachment point and its theta-derivative from one kinematic pass."""
    (ax, ay), (dax, day), gamma, dgamma = _coupler_frame(geom, theta, branch)
    ang = gamma + attach.beta
    cos_a = np.cos(ang)
    sin_a = np.sin(ang)
    point = np.stack([ax + attach.l_ext * cos_a, ay + attach.l_ext * sin_a], axis=-1)
    vel = np.stack([dax - attach.l_ext * dgamma * sin_a,
                    day + attach.l_ext * dgamma * cos_a], axis=-1)
    return point, vel


def mechanism_state(geom: FourBarGeometry, attach: CouplerAttachment, theta: float,
                    branch: Branch = Branch.OPEN) -> MechanismState:
    """Full kinematic snapshot at a single crank angle."""
    point = coupler_point(geom, attach, theta, branch)
    vel = coupler_point_velocity(geom, attach, theta, branch)
    return MechanismState(
        theta=float(theta),
        u=float(input_coordinate(geom, theta, branch)),
        du_dtheta=float(velocity_ratio(geom, theta, branch)),
        attachment_point=(float(point[0]), float(point[1])),
        attachment_velocity=(float(vel[0]), float(vel[1])),
    )


def coupler_curve(geom: FourBarGeometry, attach: CouplerAttachment,
                  branch: Branch = Branch.OPEN, n: int = 720) -> CouplerCurve:
    """Sample the attachment path on a uniform n-point grid over one revolution."""
    if n < 16:
        raise ValueError(f"coupler curve needs n >= 16 samples, got {n}")
    thetas = theta_grid(n)
    pts = coupler_point(geom, attach, thetas, branch)
    ends = coupler_point(geom, attach, np.array([0.0, TWO_PI]), branch)
    closed = bool(np.hypot(*(ends[0] - ends[1])) <= 1e-9 * geom.a)
    return CouplerCurve(theta=thetas, points=pts, closed=closed, length_scale=geom.a)


# ---------------------------------------------------------------------------
# classification and singularities
# ---------------------------------------------------------------------------

def grashof_check(geom: FourBarGeometry) -> GrashofResult:
    """Continuous-crank-rotation check.

    Slider-crank: valid iff b > a.  Rocker-crank: valid iff the crank is
    strictly the shortest link and (shortest + longest) < (sum of the other
    two), which is the crank-rocker case of the Grashof criterion.
    """
    if geom.is_slider:
        if geom.b > geom.a:
            return GrashofResult(True)
        return GrashofResult(False, f"coupler must exceed crank: b/a = {geom.b / geom.a:g} <= 1")
    links = {"a": geom.a, "b": geom.b, "c": geom.c, "d": geom.d}
    others = [geom.b, geom.c, geom.d]
    if geom.a >= min(others):
        shortest = min(links, key=links.get)
        return GrashofResult(False, f"crank is not strictly the shortest link ({shortest} is)")
    longest = max(others)
    remaining = sum(others) - longest
    if geom.a + longest >= remaining:
        return GrashofResult(
            False,
            f"shortest+longest = {geom.a + longest:g} >= {remaining:g} = sum of the others")
    return GrashofResult(True)


def singular_angles(geom: FourBarGeometry, branch: Branch = Branch.OPEN,
                    n_grid: int = 3600, tol: float = 1e-10) -> np.ndarray:
    """The two crank angles in [0, 2*pi) where the velocity ratio vanishes.

    These are the serial singularities: zero input velocity per unit crank
    rotation, hence zero transmitted torque.  Roots are bracketed on an
    ``n_grid`` sweep and bisected to ``tol`` radians.

    Raises RootError when the root count differs from 2.
    """
    thetas = theta_grid(n_grid)
    f = lambda th: velocity_ratio(geom, th, branch)
    y = np.asarray(velocity_ratio(geom, thetas, branch))
    roots = periodic_sign_change_roots(f, y, thetas, tol=tol)
    if len(roots) != 2:
        raise RootError(f"expected 2 singular angles, found {len(roots)}: {roots}")
    return np.array(roots)
