"""Placing and sizing the helper spring, step by step.

The fix for the transmission gap: hang one linear spring between the ground
and a point on an extended coupler arm.  Placement recipe:

  1. trace the attachment point's closed path over a revolution,
  2. take the two path points farthest from each other (transition points:
     there the spring is longest and flips from storing to releasing),
  3. anchor the spring at their midpoint (or on the perpendicular bisector
     if the path crosses the midpoint),
  4. relaxed length = closest approach of the cycle (no pretension),
  5. stiffness from the energy needed to drag the load across the widest
     stall arc: K = 2 T_load theta_s / (l_max - l_min)^2.

Run:  python3 demos/02_spring_placement_walkthrough.py
"""
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from springcrank import (Branch, ConstantLoad, CouplerAttachment, Direction,
                         FourBarGeometry, design_pipeline)

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

geom = FourBarGeometry.slider_crank(1.0, 6.0)
arm = CouplerAttachment(l_ext=6.0, beta=np.pi / 2)
result = design_pipeline(geom, arm, Branch.OPEN, ConstantLoad(1.0), 0.4,
                         Direction.CW)

print("step 1: coupler curve sampled at", len(result.curve.theta), "angles")
tp = result.transitions
print(f"step 2: transition points s1={tp.s1.round(4)} s2={tp.s2.round(4)} "
      f"(distance {tp.distance:.4f})")
print(f"step 3: grounding at {np.round(result.spring.grounding, 4)}")
print(f"step 4: relaxed length l0 = {result.spring.rest_length:.4f} "
      f"(spring length swings {result.profile.l_min:.4f} .. {result.profile.l_max:.4f})")
print(f"step 5: widest stall arc theta_s = {result.sizing.theta_s:.4f} rad at "
      f"T_load = {result.sizing.T_load:.4f}  ->  stiffness K = "
      f"{result.spring.stiffness:.4f}")
print()
print("feasibility: two transition points =", result.feasibility.condition1,
      "| singularities inside release arcs =", result.feasibility.condition2)
print("release arcs (start -> end, clockwise travel):")
for start, end in result.feasibility.release_intervals:
    print(f"   {np.degrees(start):7.2f} deg -> {np.degrees(end):7.2f} deg")
print(f"\nminimum net torque over the cycle: {result.torque.T_min:.4f} "
      f"({100 * result.ratio:.1f}% of the kinematic maximum)")

fig, axes = plt.subplots(1, 3, figsize=(14, 4))
ax = axes[0]
ax.plot(result.curve.x, result.curve.y, lw=1.2)
ax.plot(*tp.s1, "o", c="tab:red")
ax.plot(*tp.s2, "o", c="tab:red")
ax.plot(*result.spring.grounding, "s", c="tab:green", ms=8, label="anchor")
ax.plot([tp.s1[0], tp.s2[0]], [tp.s1[1], tp.s2[1]], "--", c="gray", lw=0.8)
ax.set_aspect("equal")
ax.set_title("attachment path and spring anchor")
ax.legend(fontsize=8)

ax = axes[1]
deg = np.degrees(result.profile.theta)
ax.plot(deg, result.profile.lengths, lw=1.2)
ax.axhline(result.spring.rest_length, ls=":", c="k", lw=1)
for t, kind in result.profile.extrema:
    ax.axvline(np.degrees(t), ls="--", lw=0.7,
               c="tab:red" if kind == "max" else "tab:blue")
ax.set_title("spring length over the cycle")
ax.set_xlabel("crank angle [deg]")

ax = axes[2]
deg = np.degrees(result.torque.theta)
ax.plot(deg, result.torque.T_kin, "--", label="kinematic", lw=1)
ax.plot(deg, result.torque.T_spring, c="tab:red", label="spring", lw=1)
ax.plot(deg, result.torque.T_total, c="tab:blue", label="total", lw=1.6)
ax.axhline(0.0, c="k", lw=0.6)
ax.set_title("crank torque decomposition (clockwise)")
ax.set_xlabel("crank angle [deg]")
ax.legend(fontsize=8)

fig.tight_layout()
fig.savefig(os.path.join(OUT, "02_spring_placement.png"), dpi=150)
print(f"\nwrote {OUT}/02_spring_placement.png")
