"""Command line entry point.

Subcommands: analyze, sweep, family, solution-space, prototype.  All emit
flat CSV/JSON files meant for external plotting; --out names the output stem
(extensions are appended per command).  Exit codes: 0 success, 2 bad
configuration or input data, 3 infeasible mechanism.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from .config import RunConfig, load_config
from .errors import ConfigError, DataError, MechanismError
from .geometry import Direction, grashof_check, singular_angles
from .placement import feasibility_conditions, spring_length_profile
from .prototype import (compare_measured, load_measured_series,
                        prototype_torque_profile)
from .reporting import (analysis_summary, write_boundaries_csv, write_family_csv,
                        write_json, write_solution_space_csv, write_sweep_csv,
                        write_torque_csv)
from .numerics import theta_grid
from .sweeps import AttachmentSearch, rocker_solution_space, sweep_attachment, sweep_family
from .torque import (ConstantLoad, SpringActuatedLoad, design_pipeline,
                     kinematic_torque, total_torque_profile, unfavorable_regions)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3


def _axis_spec(text: str) -> np.ndarray:
    """Parse an axis range 'min:max:count' into a linspace."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"axis spec {text!r}: expected min:max:count")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"axis spec {text!r}: {exc}") from exc
    if count < 2:
        raise ConfigError(f"axis spec {text!r}: count must be >= 2")
    return np.linspace(lo, hi, count)


def _apply_overrides(config: RunConfig, args) -> RunConfig:
    updates = {}
    if getattr(args, "samples", None):
        updates["n"] = args.samples
    if getattr(args, "direction", None):
        updates["direction"] = Direction(args.direction)
    if getattr(args, "threshold", None) is not None:
        updates["threshold"] = args.threshold
    return replace(config, **updates) if updates else config


def _require_constant_load(config: RunConfig) -> ConstantLoad:
    if not isinstance(config.load, ConstantLoad):
        raise ConfigError("load.mode: this command needs a constant-magnitude input "
                          "(use the prototype command for spring-actuated runs)")
    return config.load


def _analysis_result(config: RunConfig):
    """Torque profile + summary for one configuration (placed or explicit spring)."""
    load = _require_constant_load(config)
    if config.spring_mode == "auto-size":
        result = design_pipeline(
            config.geometry, config.attachment, config.branch, load,
            config.fraction, config.direction, n=config.n,
            curve_samples=config.curve_samples, clearance=config.resolved_clearance(),
            ratio_baseline=config.ratio_baseline)
        return result.torque, analysis_summary(result)
    # explicit spring: skip placement, evaluate the given design
    design = config.spring
    sing = singular_angles(config.geometry, config.branch, n_grid=config.n)
    T_kin = np.asarray(kinematic_torque(config.geometry, load,
                                        theta_grid(config.n), config.branch))
    regions = unfavorable_regions(config.geometry, load,
                                  config.fraction * float(T_kin.max()),
                                  n=config.n, branch=config.branch)
    profile = spring_length_profile(config.geometry, config.attachment,
                                    config.branch, design.grounding, config.n)
    feas = feasibility_conditions(profile, sing, config.direction)
    torque = total_torque_profile(config.geometry, config.attachment, config.branch,
                                  load, design, config.direction, n=config.n,
                                  ratio_baseline=config.ratio_baseline, profile=profile)
    summary = {
        "T_min": torque.T_min,
        "theta_at_min": torque.theta_at_min,
        "T_kin_max": torque.T_kin_max,
        "ratio": torque.ratio,
        "theta_s": regions.theta_s,
        "feasible": feas.ok,
        "condition1": feas.condition1,
        "condition2": feas.condition2,
    }
    return torque, summary


def cmd_analyze(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    grashof = grashof_check(config.geometry)
    if not grashof.valid:
        print(f"infeasible geometry: {grashof.reason}", file=sys.stderr)
        return EXIT_INFEASIBLE
    profile, summary = _analysis_result(config)
    write_torque_csv(f"{args.out}.csv", profile)
    write_json(f"{args.out}.json", summary)
    print(f"wrote {args.out}.csv and {args.out}.json "
          f"(ratio={summary['ratio']:.4f}, feasible={summary['feasible']})")
    return EXIT_OK if summary["feasible"] else EXIT_INFEASIBLE


def cmd_sweep(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    load = _require_constant_load(config)
    grid = sweep_attachment(
        config.geometry, config.branch, load, config.fraction, config.direction,
        _axis_spec(args.l_over_a), _axis_spec(args.beta),
        n=args.samples or config.n, curve_samples=config.curve_samples,
        threshold=config.threshold, clearance=config.resolved_clearance(),
        ratio_baseline=config.ratio_baseline)
    write_sweep_csv(f"{args.out}.csv", grid)
    print(f"wrote {args.out}.csv ({int(np.count_nonzero(grid.feasible))} feasible cells)")
    return EXIT_OK


def cmd_family(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    _require_constant_load(config)
    try:
        ratios = [float(v) for v in args.b_over_a.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"--b-over-a: {exc}") from exc
    if not ratios:
        raise ConfigError("--b-over-a: need at least one coupler ratio")
    entries = sweep_family(
        ratios, _axis_spec(args.l_over_a), _axis_spec(args.beta),
        a=config.geometry.a, fraction=config.fraction, direction=config.direction,
        P=config.load.P, threshold=config.threshold,
        n=args.samples or 1800)
    write_family_csv(f"{args.out}.csv", entries)
    for entry in entries:
        print(f"b/a={entry.b_over_a:g}: feasible_area={entry.feasible_area:.4f} "
              f"beta_extent={entry.beta_extent:.4f} best_ratio={entry.best_ratio:.4f}")
    print(f"wrote {args.out}.csv")
    return EXIT_OK


def cmd_solution_space(args) -> int:
    search = AttachmentSearch(l_steps=args.sub_steps, beta_steps=args.sub_steps)
    space = rocker_solution_space(
        args.c_over_a, _axis_spec(args.b_over_a), _axis_spec(args.d_over_a),
        fraction=args.fraction, threshold=args.threshold,
        direction=Direction(args.direction or "cw"), search=search)
    write_solution_space_csv(f"{args.out}.csv", space)
    write_boundaries_csv(f"{args.out}_boundaries.csv", space)
    n_ok = int(np.count_nonzero(space.grashof_ok))
    n_feas = int(np.count_nonzero(space.feasible))
    print(f"wrote {args.out}.csv and {args.out}_boundaries.csv "
          f"({n_ok} grashof-ok cells, {n_feas} feasible)")
    return EXIT_OK


def cmd_prototype(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    if not isinstance(config.load, SpringActuatedLoad):
        raise ConfigError("load.mode: the prototype command needs a spring-actuated input")
    if not config.geometry.is_slider:
        raise ConfigError("mechanism.kind: the prototype model is a slider-crank")
    if config.spring is None:
        raise ConfigError("spring.mode: the prototype needs an explicit spring design")
    profile = prototype_torque_profile(config.geometry, config.attachment,
                                       config.spring, config.load, n=config.n)
    report = {
        "T_min": profile.T_min,
        "theta_at_min": profile.theta_at_min,
        "T_kin_max": profile.T_kin_max,
        "ratio": profile.ratio,
        "crank_pin_radius": config.crank_pin_radius,
        "comparison": None,
    }
    if config.crank_pin_radius:
        report["rope_force_at_min"] = profile.T_min / config.crank_pin_radius
    if args.measured:
        comparison = compare_measured(profile, load_measured_series(args.measured))
        report["comparison"] = {
            "n_points": comparison.n_points,
            "rms": comparison.rms,
            "mean_offset": comparison.mean_offset,
        }
    write_torque_csv(f"{args.out}.csv", profile)
    write_json(f"{args.out}.json", report)
    print(f"wrote {args.out}.csv and {args.out}.json (T_min={profile.T_min:.6g})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="springcrank",
        description="Spring-assisted four-bar mechanism analysis and design sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        if config_required:
            p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--out", required=True, help="output stem (extensions appended)")
        p.add_argument("--samples", type=int, default=None,
                       help="cycle samples N (overrides config)")
        p.add_argument("--direction", choices=("cw", "ccw"), default=None,
                       help="crank travel direction (overrides config)")
        p.add_argument("--threshold", type=float, default=None,
                       help="feasibility ratio threshold (overrides config)")

    p = sub.add_parser("analyze", help="torque decomposition for one design")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="ratio grid over attachment parameters")
    common(p)
    p.add_argument("--l-over-a", required=True, metavar="MIN:MAX:COUNT")
    p.add_argument("--beta", required=True, metavar="MIN:MAX:COUNT")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("family", help="attachment sweeps for several coupler ratios")
    common(p)
    p.add_argument("--b-over-a", required=True, help="comma list, e.g. 2,4,6,8")
    p.add_argument("--l-over-a", required=True, metavar="MIN:MAX:COUNT")
    p.add_argument("--beta", required=True, metavar="MIN:MAX:COUNT")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("solution-space", help="rocker-crank link-ratio feasibility map")
    p.add_argument("--c-over-a", type=float, required=True)
    p.add_argument("--b-over-a", required=True, metavar="MIN:MAX:COUNT")
    p.add_argument("--d-over-a", required=True, metavar="MIN:MAX:COUNT")
    p.add_argument("--out", required=True)
    p.add_argument("--fraction", type=float, default=0.4)
    p.add_argument("--threshold", type=float, default=0.4)
    p.add_argument("--direction", choices=("cw", "ccw"), default="cw")
    p.add_argument("--sub-steps", type=int, default=17,
                   help="attachment sub-sweep resolution per axis")
    p.set_defaults(func=cmd_solution_space)

    p = sub.add_parser("prototype", help="spring-actuated bench prediction")
    common(p)
    p.add_argument("--measured", default=None,
                   help="measured series (angle_deg, torque) to compare against")
    p.set_defaults(func=cmd_prototype)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MechanismError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
