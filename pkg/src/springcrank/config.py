"""Run configuration: JSON schema, validation, bundled examples.

A run config is one JSON object with blocks ``mechanism``, ``attachment``,
``spring``, ``load`` and ``analysis`` (plus an optional ``prototype`` block
for bench metadata).  Validation errors name the offending field by dotted
path.  Angles are radians; units are either fully dimensionless (lengths in
crank units, unit input) or mm-N; mixing is rejected by construction since
the units tag is a single mechanism-level switch.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import ConfigError
from .geometry import (Branch, CouplerAttachment, Direction, FourBarGeometry,
                       ROCKER_CRANK, SLIDER_CRANK)
from .placement import SpringDesign
from .torque import (RATIO_KINEMATIC, RATIO_TOTAL, ConstantLoad,
                     InputLoad, SpringActuatedLoad)

UNITS = ("dimensionless", "mm-N")
SPRING_MODES = ("auto-size", "explicit")
LOAD_MODES = ("constant", "spring-actuated")

DEFAULT_N = 3600
DEFAULT_CURVE_SAMPLES = 720
DEFAULT_THRESHOLD = 0.40
DEFAULT_FRACTION = 0.40
DEFAULT_CLEARANCE_FACTOR = 0.05


@dataclass(frozen=True)
class RunConfig:
    geometry: FourBarGeometry
    attachment: CouplerAttachment
    units: str
    spring_mode: str
    spring: SpringDesign | None          # None for auto-size
    load: InputLoad
    direction: Direction
    branch: Branch
    n: int
    curve_samples: int
    fraction: float
    threshold: float
    clearance: float | None              # None -> 0.05 * a at use
    ratio_baseline: str
    crank_pin_radius: float | None = None

    def resolved_clearance(self) -> float:
        if self.clearance is not None:
            return self.clearance
        return DEFAULT_CLEARANCE_FACTOR * self.geometry.a


def _block(data: dict, name: str) -> dict:
    if name not in data:
        raise ConfigError(f"{name}: required block is missing")
    if not isinstance(data[name], dict):
        raise ConfigError(f"{name}: must be an object")
    return data[name]


def _number(block: dict, path: str, key: str, *, required: bool = True,
            default=None, positive: bool = False, nonnegative: bool = False):
    if key not in block or block[key] is None:
        if required:
            raise ConfigError(f"{path}.{key}: required value is missing")
        return default
    value = block[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {value!r}")
    value = float(value)
    if not np.isfinite(value):
        raise ConfigError(f"{path}.{key}: must be finite")
    if positive and value <= 0.0:
        raise ConfigError(f"{path}.{key}: must be > 0, got {value:g}")
    if nonnegative and value < 0.0:
        raise ConfigError(f"{path}.{key}: must be >= 0, got {value:g}")
    return value


def _choice(block: dict, path: str, key: str, options, default=None):
    if key not in block or block[key] is None:
        if default is None:
            raise ConfigError(f"{path}.{key}: required value is missing")
        return default
    value = block[key]
    if value not in options:
        raise ConfigError(f"{path}.{key}: expected one of {list(options)}, got {value!r}")
    return value


def parse_config(data: dict) -> RunConfig:
    """Validate a parsed JSON object into a RunConfig."""
    if not isinstance(data, dict):
        raise ConfigError("top level: expected a JSON object")

    mech = _block(data, "mechanism")
    kind = _choice(mech, "mechanism", "kind", (SLIDER_CRANK, ROCKER_CRANK))
    units = _choice(mech, "mechanism", "units", UNITS, default="dimensionless")
    a = _number(mech, "mechanism", "a", positive=True)
    b = _number(mech, "mechanism", "b", positive=True)
    if kind == SLIDER_CRANK:
        for extra in ("c", "d"):
            if mech.get(extra) is not None:
                raise ConfigError(f"mechanism.{extra}: not allowed for a slider-crank")
        geometry = FourBarGeometry.slider_crank(a, b)
    else:
        c = _number(mech, "mechanism", "c", positive=True)
        d = _number(mech, "mechanism", "d", positive=True)
        geometry = FourBarGeometry.rocker_crank(a, b, c, d)

    att = _block(data, "attachment")
    attachment = CouplerAttachment(
        l_ext=_number(att, "attachment", "l_ext", nonnegative=True),
        beta=_number(att, "attachment", "beta"),
    )

    spring_block = _block(data, "spring")
    spring_mode = _choice(spring_block, "spring", "mode", SPRING_MODES)
    spring = None
    if spring_mode == "explicit":
        stiffness = _number(spring_block, "spring", "K_s", nonnegative=True)
        rest = _number(spring_block, "spring", "l0", nonnegative=True)
        grounding = spring_block.get("grounding")
        if (not isinstance(grounding, (list, tuple)) or len(grounding) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                           for v in grounding)):
            raise ConfigError("spring.grounding: expected [x0, y0]")
        spring = SpringDesign(grounding=(float(grounding[0]), float(grounding[1])),
                              stiffness=stiffness, rest_length=rest)
    else:
        for key in ("K_s", "l0", "grounding"):
            if spring_block.get(key) is not None:
                raise ConfigError(f"spring.{key}: not allowed in auto-size mode")

    load_block = _block(data, "load")
    load_mode = _choice(load_block, "load", "mode", LOAD_MODES)
    if load_mode == "constant":
        load: InputLoad = ConstantLoad(P=_number(load_block, "load", "P", positive=True))
    else:
        if kind != SLIDER_CRANK:
            raise ConfigError("load.mode: spring-actuated input requires a slider-crank")
        load = SpringActuatedLoad(
            k_a=_number(load_block, "load", "k_a", positive=True),
            pretension=_number(load_block, "load", "pretension", positive=True),
        )

    analysis = data.get("analysis", {})
    if not isinstance(analysis, dict):
        raise ConfigError("analysis: must be an object")
    direction = Direction(_choice(analysis, "analysis", "direction",
                                  ("cw", "ccw"), default="cw"))
    branch = Branch(_choice(analysis, "analysis", "branch",
                            ("open", "crossed"), default="open"))
    n = int(_number(analysis, "analysis", "N", required=False, default=DEFAULT_N,
                    positive=True))
    curve_samples = int(_number(analysis, "analysis", "curve_samples", required=False,
                                default=DEFAULT_CURVE_SAMPLES, positive=True))
    fraction = _number(analysis, "analysis", "T_load_fraction", required=False,
                       default=DEFAULT_FRACTION, positive=True)
    if fraction >= 1.0:
        raise ConfigError(f"analysis.T_load_fraction: must lie in (0, 1), got {fraction:g}")
    threshold = _number(analysis, "analysis", "threshold", required=False,
                        default=DEFAULT_THRESHOLD, positive=True)
    clearance = _number(analysis, "analysis", "clearance", required=False,
                        default=None, nonnegative=True)
    ratio_baseline = _choice(analysis, "analysis", "ratio_baseline",
                             (RATIO_KINEMATIC, RATIO_TOTAL), default=RATIO_KINEMATIC)

    pin_radius = None
    if "prototype" in data:
        proto = _block(data, "prototype")
        pin_radius = _number(proto, "prototype", "crank_pin_radius",
                             required=False, default=None, positive=True)

    return RunConfig(
        geometry=geometry, attachment=attachment, units=units,
        spring_mode=spring_mode, spring=spring, load=load,
        direction=direction, branch=branch, n=n, curve_samples=curve_samples,
        fraction=fraction, threshold=threshold, clearance=clearance,
        ratio_baseline=ratio_baseline, crank_pin_radius=pin_radius,
    )


def load_config(path) -> RunConfig:
    """Read and validate a JSON run configuration file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return parse_config(data)


def bundled_config_path(name: str):
    """Filesystem path of a bundled example config (fig1, fig3, fig4, fig4e, prototype)."""
    if not name.endswith(".json"):
        name += ".json"
    ref = resources.files("springcrank").joinpath("configs", name)
    if not ref.is_file():
        raise ConfigError(f"no bundled config named {name}")
    return ref


def load_bundled_config(name: str) -> RunConfig:
    return load_config(bundled_config_path(name))
