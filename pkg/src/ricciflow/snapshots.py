"""Snapshot persistence: a small versioned JSON schema plus diagnostics CSV.

Floats are serialized with Python's shortest round-trip repr (at most 17
significant digits), so a load reproduces the stored arrays bit for bit.
"""

import csv
import json

import numpy as np

from . import flow2d
from . import profile as prof
from .profile import MetricProfile

SCHEMA_VERSION = 1

DIAGNOSTICS_HEADER = ["t", "h_const", "area", "total_curvature", "max_ratio", "min_m"]


def snapshot_dict(p, diagnostics=None):
    d = {
        "version": SCHEMA_VERSION,
        "kind": p.kind,
        "t": p.t,
        "rho": p.rho.tolist(),
        "h": p.h.tolist(),
        "m": p.m.tolist(),
        "status": p.status,
    }
    if p.kind == prof.MANIFOLD3D:
        d["k2"] = p.k2
    if diagnostics is None and p.kind == prof.SURFACE and p.status == prof.STATUS_OK:
        try:
            diagnostics = flow2d.diagnostics(p)
        except Exception:
            diagnostics = None
    if diagnostics is not None:
        d["diagnostics"] = {
            "area": diagnostics.area,
            "total_curvature": diagnostics.total_curvature,
            "max_ratio": diagnostics.max_ratio,
            "min_m": diagnostics.min_m,
        }
    return d


def profile_from_dict(d):
    if d.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported snapshot version {d.get('version')!r}")
    rho = np.array(d["rho"], dtype=float)
    h = np.array(d["h"], dtype=float)
    m = np.array(d["m"], dtype=float)
    return MetricProfile(
        kind=d["kind"], rho=rho, h=h, m=m,
        k2=float(d.get("k2", 0.0)), t=float(d["t"]), status=d.get("status", "ok"),
    )


def save_snapshot(path, p, diagnostics=None):
    with open(path, "w") as f:
        json.dump(snapshot_dict(p, diagnostics), f)


def load_snapshot(path):
    with open(path) as f:
        return profile_from_dict(json.load(f))


def write_diagnostics_csv(path, diags):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(DIAGNOSTICS_HEADER)
        for d in diags:
            w.writerow([repr(float(x)) for x in
                        (d.t, d.h_const, d.area, d.total_curvature, d.max_ratio, d.min_m)])


def write_series_csv(path, traj):
    """Series trajectory samples as CSV (t, m0, h0, R0, Kab0, Kbc0)."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["t", "m0", "h0", "R0", "Kab0", "Kbc0"])
        for s in traj.samples:
            w.writerow([repr(float(x)) for x in (s.t, s.m0, s.h0, s.R0, s.K_ab0, s.K_bc0)])


def read_series_csv(path):
    """Read back (t, m0, h0, R0, Kab0, Kbc0) rows as a column dict."""
    with open(path) as f:
        rows = list(csv.DictReader(f))
    cols = {}
    for name in ("t", "m0", "h0", "R0", "Kab0", "Kbc0"):
        cols[name] = np.array([float(r[name]) for r in rows])
    return cols
