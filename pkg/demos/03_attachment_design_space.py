"""Mapping the attachment design space of the slider-crank.

Sweeps the two arm parameters (length over crank length, angle off the
coupler axis) and colors each cell by the minimum net torque the sized
spring achieves, as a fraction of the kinematic maximum.  Arm angles in the
upper half-plane drive the crank clockwise; the mirrored half-plane would
drive it the other way and shows up non-positive here.

Run:  python3 demos/03_attachment_design_space.py   (about half a minute)
"""
import os
import time

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from springcrank import (Branch, ConstantLoad, Direction, FourBarGeometry,
                         sweep_attachment, sweep_family)

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

geom = FourBarGeometry.slider_crank(1.0, 6.0)
l_values = np.linspace(0.0, 8.0, 41)
beta_values = np.linspace(0.0, np.pi, 41)

t0 = time.time()
grid = sweep_attachment(geom, Branch.OPEN, ConstantLoad(1.0), 0.4, Direction.CW,
                        l_values, beta_values, n=1800, curve_samples=360)
print(f"swept {grid.ratio.size} cells in {time.time() - t0:.1f}s")
finite = grid.ratio[np.isfinite(grid.ratio)]
best = np.unravel_index(np.argmax(np.where(np.isfinite(grid.ratio), grid.ratio, -9)),
                        grid.ratio.shape)
print(f"best cell: l/a={l_values[best[0]]:.2f}, beta={beta_values[best[1]]:.3f} rad "
      f"-> ratio {grid.ratio[best]:.3f}")
print(f"cells at or above the 40% threshold: {int(grid.feasible.sum())} "
      f"(area {grid.feasible_area:.3f})")

fig, axes = plt.subplots(1, 2, figsize=(12, 4.4))
ax = axes[0]
shown = np.where(np.isfinite(grid.ratio), grid.ratio, np.nan)
mesh = ax.pcolormesh(beta_values, l_values, shown, cmap="viridis",
                     vmin=-0.5, vmax=0.5, shading="nearest")
ax.contour(beta_values, l_values, np.where(np.isfinite(grid.ratio), grid.ratio, -1),
           levels=[grid.threshold], colors="w", linestyles="--")
fig.colorbar(mesh, ax=ax, label="min net torque / kinematic max")
ax.set_xlabel("arm angle beta [rad]")
ax.set_ylabel("arm length l_ext / a")
ax.set_title("clockwise design space, b/a = 6")

# how the workable region changes with the coupler ratio
entries = sweep_family([2.0, 4.0, 6.0, 8.0], np.linspace(0.0, 9.0, 21),
                       np.linspace(0.0, np.pi, 21), n=1800, curve_samples=360)
ax = axes[1]
for entry in entries:
    print(f"b/a={entry.b_over_a:g}: best ratio {entry.best_ratio:.3f} "
          f"at {entry.best_cell}, beta extent {entry.beta_extent:.3f} rad")
    if entry.grid is not None:
        ax.contourf(entry.grid.y_values, entry.grid.x_values,
                    entry.grid.feasible.astype(float), levels=[0.5, 1.5],
                    alpha=0.35)
        ax.plot([], [], lw=6, alpha=0.35, label=f"b/a = {entry.b_over_a:g}")
ax.set_xlabel("arm angle beta [rad]")
ax.set_ylabel("arm length l_ext / a")
ax.set_title("workable regions per coupler ratio")
ax.legend(fontsize=8)

fig.tight_layout()
fig.savefig(os.path.join(OUT, "03_design_space.png"), dpi=150)
print(f"wrote {OUT}/03_design_space.png")
