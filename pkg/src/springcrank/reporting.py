"""Flat-file emission: torque CSVs, sweep grids, JSON summaries.

Numbers are written with 17 significant digits so every emitted value
re-parses to the exact float64 in memory.  Files are written atomically
(temp file + rename), UTF-8, LF line endings.
"""
from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .sweeps import SolutionSpace, SweepGrid
from .torque import PipelineResult, TorqueProfile

TORQUE_COLUMNS = "theta_rad,theta_deg,T_kin,T_spring,T_total,spring_length"


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def atomic_write_text(path, text: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_torque_csv(path, profile: TorqueProfile) -> None:
    lines = [TORQUE_COLUMNS]
    deg = np.degrees(profile.theta)
    for i in range(len(profile.theta)):
        lines.append(",".join((
            fmt(profile.theta[i]), fmt(deg[i]), fmt(profile.T_kin[i]),
            fmt(profile.T_spring[i]), fmt(profile.T_total[i]),
            fmt(profile.spring_lengths[i]),
        )))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_torque_csv(path) -> dict[str, np.ndarray]:
    """Parse a torque CSV back into column arrays (round-trip counterpart)."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        names = header.split(",")
        rows = [[float(cell) for cell in line.strip().split(",")]
                for line in fh if line.strip()]
    data = np.asarray(rows)
    return {name: data[:, k] for k, name in enumerate(names)}


def analysis_summary(result: PipelineResult) -> dict:
    """JSON summary of one analysis run (keys are part of the CLI contract)."""
    torque = result.torque
    return {
        "T_min": torque.T_min,
        "theta_at_min": torque.theta_at_min,
        "T_kin_max": torque.T_kin_max,
        "ratio": torque.ratio,
        "theta_s": result.regions.theta_s,
        "feasible": result.feasibility.ok,
        "condition1": result.feasibility.condition1,
        "condition2": result.feasibility.condition2,
    }


def write_json(path, payload: dict) -> None:
    atomic_write_text(path, json.dumps(payload, indent=2) + "\n")


def write_sweep_csv(path, grid: SweepGrid) -> None:
    lines = [f"{grid.x_name},{grid.y_name},ratio,feasible"]
    for i, x in enumerate(grid.x_values):
        for j, y in enumerate(grid.y_values):
            lines.append(",".join((
                fmt(x), fmt(y), fmt(grid.ratio[i, j]),
                str(int(grid.feasible[i, j])),
            )))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_family_csv(path, entries) -> None:
    lines = ["b_over_a,l_over_a,beta_rad,ratio,feasible"]
    for entry in entries:
        if entry.grid is None:
            continue
        grid = entry.grid
        for i, x in enumerate(grid.x_values):
            for j, y in enumerate(grid.y_values):
                lines.append(",".join((
                    fmt(entry.b_over_a), fmt(x), fmt(y),
                    fmt(grid.ratio[i, j]), str(int(grid.feasible[i, j])),
                )))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_solution_space_csv(path, space: SolutionSpace) -> None:
    lines = ["b_over_a,d_over_a,grashof_ok,best_ratio,feasible"]
    for i, b in enumerate(space.b_values):
        for j, d in enumerate(space.d_values):
            lines.append(",".join((
                fmt(b), fmt(d), str(int(space.grashof_ok[i, j])),
                fmt(space.best_ratio[i, j]), str(int(space.feasible[i, j])),
            )))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_boundaries_csv(path, space: SolutionSpace) -> None:
    """The three crank-rocker inequality lines as labelled polylines."""
    lines = ["boundary,b_over_a,d_over_a"]
    for name, polyline in space.boundaries:
        for point in polyline:
            lines.append(f"{name},{fmt(point[0])},{fmt(point[1])}")
    atomic_write_text(path, "\n".join(lines) + "\n")
