#!/usr/bin/env python3
"""Quantitative neck pinch: order-10 series integration + scaling-law fits.

h and m are carried as even power series about the neck; the coefficient
ODEs come from the flow equations via runtime series arithmetic, stepped by
adaptive explicit Euler.  Near the pinch every neck quantity follows a
power law c (T - t)^p; fitting log|q| against log(T - t) over a grid of
candidate T values recovers the scaling exponents and the pinch time.

Runs at eta=1e-4 (about a minute); pass --fast for eta=1e-3.
"""

import sys
import time

import ricciflow as rf
from ricciflow.cli import FIT_SAMPLE_TIMES

eta = 1e-3 if "--fast" in sys.argv else 1e-4
state = rf.neck_series_state()
print(f"integrating the neck series (eta={eta:g}) ...")
t0 = time.perf_counter()
traj = rf.series_flow(state, stop_m0=1e-9, eta=eta, sample_times=FIT_SAMPLE_TIMES)
print(f"  {traj.steps} steps, wall {time.perf_counter() - t0:.1f}s, "
      f"status={traj.status}, ended at t={traj.t_end:.10e}")

print("\nsamples at the standard fit times:")
print("  t              m0            h0          R(0)         K_ab(0)      K_bc(0)")
for s in traj.samples:
    print(f"  {s.t:.9e}  {s.m0:.4e}  {s.h0:.4e}  {s.R0:+.4e}  {s.K_ab0:+.4e}  {s.K_bc0:+.4e}")

print("\npower-law fits q ~ c (T - t)^p at rho = 0 (own T per quantity):")
rows = rf.fit_report(traj)
for r in rows:
    ref = f"   reference: c={r.reference[0]:+.3f} p={r.reference[1]:+.3f}" if r.reference else ""
    flags = f"   [{','.join(r.flags)}]" if r.flags else ""
    print(f"  {r.quantity:4s} c={r.fit.c:+.4f}  p={r.fit.p:+.4f}  T={r.fit.T:.8e}  "
          f"cond={r.fit.conditioning:.2e}{ref}{flags}")
print("\n(h carries the late_T flag: it diverges at a visibly later fitted T"
      "\n than m -- the known tension in these empirical laws; the fits are"
      "\n ill-conditioned by nature, which the conditioning column measures.)")
