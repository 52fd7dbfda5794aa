#!/usr/bin/env python3
"""Revolution meshes and OBJ export.

Builds watertight sphere/dumbbell meshes (Euler characteristic 2 after
welding pole rings) and an intentionally incomplete profile whose mesh
stays open with reported boundary loops.
"""

import numpy as np

import ricciflow as rf
from ricciflow.mesh import mesh_diagnostics, write_obj
from ricciflow.profile import MetricProfile, ShapeParams

for name, (c3, c5) in [("sphere", (0.0, 0.0)), ("dumbbell", (0.766, -0.091))]:
    p = rf.make_initial_surface(ShapeParams(c3, c5), 128)
    mesh = rf.revolve_mesh(rf.generating_curve(p), 64)
    d = mesh_diagnostics(mesh)
    write_obj(mesh, f"{name}.obj")
    print(f"{name}.obj: {len(mesh.vertices)} vertices, {len(mesh.faces)} triangles, "
          f"watertight={d['watertight']}, chi={d['euler_characteristic']}")

rho = np.linspace(0, np.pi, 128)
m = np.sin(rho) ** 2
m[60:68] = -1.0  # a band the chart cannot realize
p = MetricProfile(kind="surface2d", rho=rho, h=np.ones(128), m=m)
c = rf.generating_curve(p)
mesh = rf.revolve_mesh(c, 32)
d = mesh_diagnostics(mesh)
write_obj(mesh, "open_band.obj")
print(f"open_band.obj: complete={c.complete}, watertight={d['watertight']}, "
      f"boundary loops={d['boundary_loops']}")
