#!/usr/bin/env python3
"""Qualitative 3-manifold neck pinch by large-step finite differences.

The initial metric m = 1/10000 + sin^2(9 pi rho/40), h = 1, K2 = 1 has a
thin neck at rho = 0 feeding two bulges.  Explicit Euler with the standard
large-step ladder is only qualitatively correct (each interval is a single
step), but it shows the neck radius collapsing and, on the last rungs,
m < 0 near rho = 0: the step size jumped over the singularity, and the
affected nodes are flagged non-geometric.  Cross-sections of the two
separating bodies go to fd_cross_sections.csv.
"""

import csv

import numpy as np

import ricciflow as rf
from ricciflow.cli import FD_LADDER
from ricciflow.profile import MetricProfile

p = rf.make_neck_manifold(512)
snaps = rf.fd_flow_3d(p, FD_LADDER, continue_past_pinch=True)

print("  t              m(0)          min m         status   cut-out nodes")
for s in snaps:
    q = s.profile
    print(f"  {q.t:.9f}  {q.m[0]:+.3e}  {q.m.min():+.3e}  {q.status:8s} {int(s.non_geometric.sum())}")

with open("fd_cross_sections.csv", "w", newline="") as f:
    w = csv.writer(f)
    w.writerow(["snapshot", "t", "x", "y"])
    for i, s in enumerate(snaps):
        q = s.profile
        keep = ~s.non_geometric
        surf = MetricProfile(kind="surface2d", rho=q.rho, h=q.h,
                             m=np.where(keep, q.m, -1.0), t=q.t)
        c = rf.generating_curve(surf)
        for x, y in c.points:
            w.writerow([i, repr(float(q.t)), repr(float(x)), repr(float(y))])
print("wrote fd_cross_sections.csv (pinched snapshots show the neck interval cut out)")
