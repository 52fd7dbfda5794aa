#!/usr/bin/env python3
"""Dumbbell surface rounding out under Ricci flow.

For surfaces the flow has no neck pinch: the waist of the dumbbell
(c3=0.766, c5=-0.091) fattens while everything shrinks toward the round
point.  Total area obeys dA/dt = -8 pi exactly (Gauss-Bonnet), which the
diagnostics track to a fraction of a percent.  Writes cross-section frames
to dumbbell_frames.csv for plotting.
"""

import csv

import numpy as np

import ricciflow as rf
from ricciflow.flow2d import Flow2DConfig
from ricciflow.profile import ShapeParams

p = rf.make_initial_surface(ShapeParams(0.766, -0.091), 256)
a0 = rf.area(p)
cfg = Flow2DConfig(dt=0.01, reparam_every=1)

frames = [rf.generating_curve(p)]
q = p
print(f"t=0.000: area={a0:.4f}  neck radius={np.sqrt(q.m[q.n // 2]):.4f}")
for frame in range(6):
    q, diags = rf.flow_surface(q, cfg, 2)
    if q.status != "ok":
        print(f"flow halted ({q.status}) at t={q.t:.3f}")
        break
    frames.append(rf.generating_curve(q))
    d = diags[-1]
    drift = abs(d.area - (a0 - 8 * np.pi * d.t)) / a0
    print(f"t={d.t:.3f}: area={d.area:.4f}  neck radius={np.sqrt(q.m[q.n // 2]):.4f}  "
          f"area-law drift={drift:.2e}  max slope ratio={d.max_ratio:.6f}")

with open("dumbbell_frames.csv", "w", newline="") as f:
    w = csv.writer(f)
    w.writerow(["frame", "x", "y"])
    for i, c in enumerate(frames):
        for x, y in c.points:
            w.writerow([i, repr(float(x)), repr(float(y))])
print(f"wrote dumbbell_frames.csv ({len(frames)} cross-section frames, axis horizontal)")
