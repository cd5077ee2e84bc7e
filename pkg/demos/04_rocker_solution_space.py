"""Rocker-crank feasibility: link ratios and direction asymmetry.

A rocker-crank converts a swinging input into full crank rotation only for
link ratios satisfying the crank-rocker inequalities, and the helper spring
reaches the 40% torque floor only on part of that plane.  Unlike the
slider-crank, the coupler path is asymmetric, so clockwise and
counterclockwise travel see different workable attachment regions.

Run:  python3 demos/04_rocker_solution_space.py   (about a minute)
"""
import os
import time

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from springcrank import (AttachmentSearch, Branch, ConstantLoad, Direction,
                         FourBarGeometry, rocker_solution_space, sweep_attachment)

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

rocker = FourBarGeometry.rocker_crank(1.0, 6.0, 2.0, 6.2)
l_values = np.linspace(0.0, 8.0, 25)
beta_values = np.linspace(0.0, 2 * np.pi, 25, endpoint=False)

fig, axes = plt.subplots(1, 3, figsize=(15, 4.2))
for ax, direction in zip(axes[:2], (Direction.CW, Direction.CCW)):
    t0 = time.time()
    grid = sweep_attachment(rocker, Branch.OPEN, ConstantLoad(1.0), 0.4, direction,
                            l_values, beta_values, n=1200, curve_samples=300)
    finite = grid.ratio[np.isfinite(grid.ratio)]
    print(f"{direction.value}: best ratio {finite.max():.3f}, "
          f"{int(grid.feasible.sum())} cells at the 40% floor "
          f"({time.time() - t0:.0f}s)")
    shown = np.where(np.isfinite(grid.ratio), grid.ratio, np.nan)
    mesh = ax.pcolormesh(beta_values, l_values, shown, cmap="viridis",
                         vmin=-0.5, vmax=0.5, shading="nearest")
    fig.colorbar(mesh, ax=ax, label="min net torque / kinematic max")
    ax.set_title(f"attachment space, {direction.value} travel")
    ax.set_xlabel("arm angle beta [rad]")
    ax.set_ylabel("arm length l_ext / a")

t0 = time.time()
space = rocker_solution_space(
    2.0, np.linspace(1.5, 10.0, 9), np.linspace(1.5, 10.0, 9),
    direction=Direction.CCW,
    search=AttachmentSearch(l_steps=9, beta_steps=17, n=720, curve_samples=240))
print(f"solution space c/a=2: {int(space.grashof_ok.sum())} crank-rocker cells, "
      f"{int(space.feasible.sum())} also meet the torque floor "
      f"({time.time() - t0:.0f}s)")

ax = axes[2]
ax.pcolormesh(space.d_values, space.b_values, space.grashof_ok.astype(float),
              cmap="Greys", vmin=0, vmax=2.5, shading="nearest")
fy, fx = np.nonzero(space.feasible)
ax.scatter(space.d_values[fx], space.b_values[fy], marker="s", c="tab:green",
           label="meets 40% floor")
for name, line in space.boundaries:
    ax.plot(line[:, 1], line[:, 0], lw=1, label=name)
ax.set_xlim(space.d_values.min(), space.d_values.max())
ax.set_ylim(space.b_values.min(), space.b_values.max())
ax.set_xlabel("ground ratio d/a")
ax.set_ylabel("coupler ratio b/a")
ax.set_title("crank-rocker plane, c/a = 2")
ax.legend(fontsize=7, loc="upper left")

fig.tight_layout()
fig.savefig(os.path.join(OUT, "04_rocker_space.png"), dpi=150)
print(f"wrote {OUT}/04_rocker_space.png")
