"""Acceptance suite: every criterion at its stated tolerance.

Run with  pytest tests/test_acceptance.py -v -s  to see one line per
criterion.  The series trajectory and the long surface flows are shared
module fixtures, so the suite costs one slow integration (about a minute),
not several.
"""

import time

import numpy as np
import pytest

import ricciflow as rf
from ricciflow import pinchfit
from ricciflow.flow2d import Flow2DConfig
from ricciflow.flow3d import SeriesTrajectory
from ricciflow.profile import ShapeParams

FIT_TIMES = [7.9300e-5, 7.9310e-5, 7.9320e-5, 7.9330e-5, 7.9340e-5, 7.9345e-5, 7.9350e-5]
CROSS_TIMES = [2.5e-6, 5e-6, 7.5e-6, 1e-5]

T_REFERENCE = 7.93514e-5
H_PEAK_REFERENCE = 1.027938
H_FINAL_REFERENCE = 0.163754


def report(name, ok, detail=""):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module")
def surface_flows():
    """All 2-sphere acceptance flows, keyed by name -> (profile, diags, wall)."""
    flows = {}
    p = rf.make_initial_surface(ShapeParams(0, 0), 128)
    t0 = time.perf_counter()
    q, diags = rf.flow_surface(p, Flow2DConfig(dt=1e-3), 100)
    flows["round"] = (q, diags, time.perf_counter() - t0)
    for name, (c3, c5), n, steps in [
        ("dumbbell", (0.766, -0.091), 256, 2000),
        ("hseq", (0.021, 0.598), 512, 2000),  # the spikiest shape needs the finer grid
        ("bulge", (0.3, 0.0), 256, 150),
        ("pear", (-0.05, 0.15), 256, 150),
    ]:
        p = rf.make_initial_surface(ShapeParams(c3, c5), n)
        q, diags = rf.flow_surface(p, Flow2DConfig(dt=2e-3), steps)
        flows[name] = (q, diags, None)
    return flows


@pytest.fixture(scope="module")
def series_traj():
    state = rf.neck_series_state()
    return rf.series_flow(state, stop_m0=1e-9, eta=1e-4,
                          sample_times=CROSS_TIMES + FIT_TIMES)


def _late_time_view(traj):
    samples = tuple(s for s in traj.samples if s.t >= FIT_TIMES[0] - 1e-12)
    return SeriesTrajectory(samples=samples, status=traj.status,
                            t_end=traj.t_end, steps=traj.steps)


def test_round_sphere_closed_form():
    p = rf.make_initial_surface(ShapeParams(0, 0), 128)
    cfg = Flow2DConfig(dt=1e-3)
    t0 = time.perf_counter()
    err_h = 0.0
    err_m = 0.0
    q = p
    for _ in range(100):
        q, d = rf.flow_surface(q, cfg, 1)
        assert q.status == "ok"
        err_h = max(err_h, np.abs(q.h - (1 - 2 * q.t)).max())
        err_m = max(err_m, np.abs(q.m - (1 - 2 * q.t) * np.sin(q.rho) ** 2).max())
    wall = time.perf_counter() - t0
    report(
        "round-sphere closed form (n=128, dt=1e-3, 100 steps)",
        err_h <= 1e-3 and err_m <= 1e-3 and wall < 1.0,
        f"max|h-(1-2t)|={err_h:.2e}, max|m-...|={err_m:.2e}, wall={wall:.2f}s",
    )


def test_gauss_bonnet_every_ok_snapshot(surface_flows):
    worst = 0.0
    count = 0
    for name, (_, diags, _) in surface_flows.items():
        for d in diags:
            worst = max(worst, abs(d.total_curvature - 4 * np.pi))
            count += 1
    report(
        "Gauss-Bonnet: total curvature = 4 pi at every ok snapshot",
        worst <= 1e-2,
        f"worst |TC - 4pi| = {worst:.2e} over {count} snapshots",
    )


def test_area_decay_dumbbell(surface_flows):
    _, diags, _ = surface_flows["dumbbell"]
    p0 = rf.make_initial_surface(ShapeParams(0.766, -0.091), 256)
    a0 = rf.area(p0)
    ts = np.array([d.t for d in diags])
    areas = np.array([d.area for d in diags])
    dev = np.abs(areas - (a0 - 8 * np.pi * ts)) / a0
    report(
        "area decay A(t) = A(0) - 8 pi t within 0.5% until status change",
        dev.max() <= 5e-3,
        f"max relative deviation {dev.max():.2e} over t <= {ts[-1]:.3f}",
    )


def test_embeddability_preserved_on_shape_set(surface_flows):
    worst = 0.0
    names = ["round", "dumbbell", "hseq", "bulge", "pear"]
    for name in names:
        _, diags, _ = surface_flows[name]
        assert len(diags) >= 50, f"{name} halted too early to be meaningful"
        worst = max(worst, max(d.max_ratio for d in diags))
    report(
        "embeddability preserved: max_ratio <= 1 + 1e-6 at all ok snapshots (5 shapes)",
        worst <= 1 + 1e-6,
        f"worst ratio - 1 = {worst - 1:.2e}",
    )


def test_published_h_sequence(surface_flows):
    _, diags, _ = surface_flows["hseq"]
    ts = np.concatenate([[0.0], [d.t for d in diags]])
    hc = np.concatenate([[1.0], [d.h_const for d in diags]])
    peak = hc.max()
    below = np.nonzero(hc <= H_FINAL_REFERENCE)[0]
    reached = len(below) > 0
    ok_peak = abs(peak - H_PEAK_REFERENCE) <= 0.02 * H_PEAK_REFERENCE
    ok_monotone = False
    ok_ratio = False
    if reached:
        # calibrate the last frame to the published final value: linear
        # interpolation of the crossing time of the h trace
        i = below[0]
        t_end = ts[i - 1] + (ts[i] - ts[i - 1]) * (hc[i - 1] - H_FINAL_REFERENCE) / (hc[i - 1] - hc[i])
        frames = np.interp(np.linspace(0.0, t_end, 12), ts, hc)
        k_peak = int(np.argmax(frames))
        ok_monotone = bool((np.diff(frames[k_peak:]) < 0).all())
        ratio = frames[-1] / peak
        ref_ratio = H_FINAL_REFERENCE / H_PEAK_REFERENCE
        ok_ratio = abs(ratio - ref_ratio) <= 0.05 * ref_ratio
    report(
        "reparametrized-h trace: peak 1.027938 +-2%, monotone decay, final/peak +-5%",
        reached and ok_peak and ok_monotone and ok_ratio,
        f"peak={peak:.6f}, reached_final={reached}"
        + (f", 12-frame ratio dev ok={ok_ratio}, monotone={ok_monotone}" if reached else ""),
    )


def test_neck_pinch_time(series_traj):
    rows = rf.fit_report(_late_time_view(series_traj), quantities=("m",))
    T_est = rows[0].fit.T
    rel = abs(T_est - T_REFERENCE) / T_REFERENCE
    report(
        "neck pinch time within 1% of 7.93514e-5",
        rel <= 0.01,
        f"T_est={T_est:.8e}, rel dev={rel:.2e}, integration ended at t={series_traj.t_end:.8e}",
    )


def test_scaling_exponents(series_traj):
    rows = rf.fit_report(_late_time_view(series_traj))
    by_q = {r.quantity: r for r in rows}
    tol = {"m": 0.05, "h": 0.05, "R": 0.05, "Kbc": 0.05, "Kab": 0.08}
    ref_p = {q: pinchfit.REFERENCE_LAWS[q][1] for q in tol}
    fails = []
    details = []
    for q in ("m", "h", "R", "Kab", "Kbc"):
        r = by_q[q]
        dp = r.fit.p - ref_p[q]
        details.append(f"{q}: p={r.fit.p:+.4f} (dp={dp:+.3f}, cond={r.fit.conditioning:.3g})")
        if abs(dp) > tol[q]:
            fails.append(q)
    report(
        "scaling exponents match the reference laws (+-0.05, Kab +-0.08)",
        not fails,
        "; ".join(details),
    )


def test_pole_identity_along_trajectory(series_traj):
    worst = max(abs(s.m0 * s.K_bc0 - 1.0) for s in series_traj.samples)
    report(
        "m0 * K_bc(0) = K2 to 1e-10 relative along the series trajectory",
        worst <= 1e-10,
        f"worst relative deviation {worst:.2e} over {len(series_traj.samples)} samples",
    )


def test_cross_mode_oracle(series_traj):
    p = rf.make_neck_manifold(512)
    snaps = rf.fd_flow_3d(p, CROSS_TIMES, max_dt=2e-8)
    fd_m0 = {round(s.profile.t, 12): s.profile.m[0] for s in snaps}
    series_m0 = {round(s.t, 12): s.m0 for s in series_traj.samples if s.t <= 1e-5 + 1e-12}
    devs = []
    for t, m_fd in fd_m0.items():
        m_se = series_m0[t]
        devs.append(abs(m_fd - m_se) / m_se)
    report(
        "cross-mode: fd (fine steps) vs series m(0,t) within 1% for t <= 1e-5",
        len(devs) == 4 and max(devs) <= 0.01,
        f"max relative difference {max(devs):.2e}",
    )


def test_synthetic_fit_recovery():
    rng = np.random.default_rng(2024)
    grid = 10_000
    worst_p = 0.0
    worst_T_cells = 0.0
    for _ in range(20):
        c = rng.uniform(0.1, 5.0) * rng.choice([-1.0, 1.0])
        p_true = rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 1.5)
        t_last = 9e-5
        T_true = t_last + rng.uniform(1e-7, 9e-6)
        times = np.linspace(0.0, t_last, 7)
        q = c * (T_true - times) ** p_true
        bracket = (t_last + 1e-9, t_last + 1e-5)
        cell = (bracket[1] - bracket[0]) / grid
        fit = rf.fit_power_law(np.column_stack([times, q]), bracket, grid=grid)
        worst_p = max(worst_p, abs(fit.p - p_true))
        worst_T_cells = max(worst_T_cells, abs(fit.T - T_true) / cell)
    report(
        "synthetic power-law recovery to grid resolution (20 randomized cases)",
        worst_p <= 2.0 / grid and worst_T_cells <= 1.0,
        f"worst |dp|={worst_p:.2e} (tol {2.0 / grid:.1e}), worst T error {worst_T_cells:.2f} cells",
    )
