"""Unnormalized Ricci flow of SO(3)-invariant 3-manifolds.

The metric is h(rho) d rho^2 + m(rho) (orbit surface of constant curvature
K2); with K2 = 1 the orbits are round 2-spheres and the flow

    dh/dt = 2 m''/m - (m')^2/m^2 - m' h'/(m h)
    dm/dt = m''/h  - m' h'/(2 h^2) - 2 K2

pinches the neck (m -> 0 at rho = 0) in finite time for suitable initial
data.  Two integrators are provided:

* ``fd_flow_3d`` -- explicit finite differences on the rho-grid.  With the
  large-step schedules it is qualitatively correct only (the snapshots say
  so); with fine substeps it serves as a cross-check of the series mode
  well before the pinch.
* ``series_flow`` -- the quantitative instrument near the neck: h and m as
  even power series through order 10, coefficient ODEs obtained by series
  arithmetic at runtime, adaptive explicit Euler in time.

The standard example has m = 1/10000 + sin^2(9 pi rho / 40), h = 1, K2 = 1;
its neck sits at rho = 0 and the bulge maximum at rho = 20/9, which is the
fd domain (even reflection at both ends).
"""

from dataclasses import dataclass

import numpy as np

from . import series as ps
from .profile import (
    MANIFOLD3D,
    MetricProfile,
    STATUS_OK,
    STATUS_PINCHED,
    STATUS_UNSTABLE,
)
from .stencils import symmetric_grid

NECK_RHO_MAX = 20.0 / 9.0
NECK_WAVE = 9.0 * np.pi / 40.0


@dataclass(frozen=True)
class SeriesState:
    """Even power series of h and m about the neck, order 10."""

    h_coef: np.ndarray
    m_coef: np.ndarray
    k2: float = 1.0
    t: float = 0.0

    def __post_init__(self):
        for name in ("h_coef", "m_coef"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if len(arr) != ps.ORDER + 1:
                raise ValueError(f"{name} must have {ps.ORDER + 1} coefficients")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def m0(self):
        return float(self.m_coef[0])

    @property
    def h0(self):
        return float(self.h_coef[0])


@dataclass(frozen=True)
class CurvatureReport:
    """Scalar and sectional curvatures; arrays per node, or scalars at the
    neck for series states."""

    R: np.ndarray
    K_ab: np.ndarray
    K_bc: np.ndarray
    R11: np.ndarray = None
    R22: np.ndarray = None


@dataclass(frozen=True)
class Snapshot3D:
    """One fd snapshot; qualitative: large-step Euler, no convergence claim.

    ``non_geometric`` flags nodes where m < 0 (past the pinch the chart no
    longer describes a Riemannian metric there, and cross-section extraction
    skips them).
    """

    profile: MetricProfile
    qualitative: bool
    non_geometric: np.ndarray


@dataclass(frozen=True)
class SeriesSample:
    t: float
    m0: float
    h0: float
    R0: float
    K_ab0: float
    K_bc0: float


@dataclass(frozen=True)
class SeriesTrajectory:
    samples: tuple
    status: str
    t_end: float
    steps: int

    def column(self, name):
        idx = {"t": 0, "m": 1, "h": 2, "R": 3, "Kab": 4, "Kbc": 5}[name]
        return np.array([(s.t, s.m0, s.h0, s.R0, s.K_ab0, s.K_bc0)[idx] for s in self.samples])


def make_neck_manifold(n=512, m_min=1e-4, k2=1.0):
    """The standard pinching example sampled on [0, 20/9]."""
    rho = symmetric_grid(n, NECK_RHO_MAX)
    m = m_min + np.sin(NECK_WAVE * rho) ** 2
    return MetricProfile(kind=MANIFOLD3D, rho=rho, h=np.ones(n), m=m, k2=k2)


def neck_series_state(m_min=1e-4, k2=1.0):
    """Order-10 expansion of the standard example about rho = 0."""
    a = NECK_WAVE
    m = ps.zero()
    m[0] = m_min
    m[2] = a**2
    m[4] = -(a**4) / 3.0
    m[6] = 2.0 * a**6 / 45.0
    m[8] = -(a**8) / 315.0
    m[10] = 2.0 * a**10 / 14175.0
    return SeriesState(h_coef=ps.const(1.0), m_coef=m, k2=k2)


def _derivatives_3d(p):
    dx = p.drho
    def ext(f):
        return np.concatenate([[f[1]], f, [f[-2]]])
    M, H = ext(p.m), ext(p.h)
    mp = (M[2:] - M[:-2]) / (2.0 * dx)
    hp = (H[2:] - H[:-2]) / (2.0 * dx)
    mpp = (M[2:] - 2.0 * M[1:-1] + M[:-2]) / dx**2
    return mp, hp, mpp


def ricci_flow_rhs_3d(p):
    """(dh/dt, dm/dt) per node; even-reflection ghosts at both ends."""
    if p.kind != MANIFOLD3D:
        raise ValueError("ricci_flow_rhs_3d expects a manifold3d profile")
    if p.m.min() <= 0.0:
        raise FloatingPointError("m <= 0: profile is pinched")
    mp, hp, mpp = _derivatives_3d(p)
    dh = 2.0 * mpp / p.m - mp**2 / p.m**2 - mp * hp / (p.m * p.h)
    dm = mpp / p.h - mp * hp / (2.0 * p.h**2) - 2.0 * p.k2
    return dh, dm


def curvatures_3d(p):
    """Curvature report for a grid profile or a SeriesState.

    For a series state the rho -> 0 limits apply:
    R(0) = 2 K2/m0 - 4 m2/(m0 h0), K_ab(0) = -m2/(m0 h0), K_bc(0) = K2/m0.
    """
    if isinstance(p, SeriesState):
        m0, m2 = p.m_coef[0], p.m_coef[2]
        h0 = p.h_coef[0]
        return CurvatureReport(
            R=np.float64(2.0 * p.k2 / m0 - 4.0 * m2 / (m0 * h0)),
            K_ab=np.float64(-m2 / (m0 * h0)),
            K_bc=np.float64(p.k2 / m0),
        )
    mp, hp, mpp = _derivatives_3d(p)
    m, h, k2 = p.m, p.h, p.k2
    R = mp**2 / (2.0 * m**2 * h) - 2.0 * mpp / (m * h) + mp * hp / (m * h**2) + 2.0 * k2 / m
    K_ab = mp**2 / (4.0 * m**2 * h) - mpp / (2.0 * m * h) + mp * hp / (4.0 * m * h**2)
    K_bc = k2 / m - mp**2 / (4.0 * m**2 * h)
    R11 = -mpp / m + mp**2 / (2.0 * m**2) + mp * hp / (2.0 * m * h)
    R22 = mp * hp / (4.0 * h**2) - mpp / (2.0 * h) + k2
    return CurvatureReport(R=R, K_ab=K_ab, K_bc=K_bc, R11=R11, R22=R22)


def _raw_rhs_3d(rho, h, m, k2):
    """RHS without the positivity guard; used for display-only post-pinch
    continuation where negative m is retained."""
    dx = rho[1] - rho[0]
    def ext(f):
        return np.concatenate([[f[1]], f, [f[-2]]])
    M, H = ext(m), ext(h)
    mp = (M[2:] - M[:-2]) / (2.0 * dx)
    hp = (H[2:] - H[:-2]) / (2.0 * dx)
    mpp = (M[2:] - 2.0 * M[1:-1] + M[:-2]) / dx**2
    with np.errstate(divide="ignore", invalid="ignore"):
        dh = 2.0 * mpp / m - mp**2 / m**2 - mp * hp / (m * h)
        dm = mpp / h - mp * hp / (2.0 * h**2) - 2.0 * k2
    return dh, dm


def fd_flow_3d(p, schedule, max_dt=None, continue_past_pinch=False):
    """Explicit Euler through the given target times.

    Default is one step per schedule interval, matching the deliberately
    large-step qualitative runs; pass max_dt to subdivide the intervals for
    quantitative use well before the pinch.  Once interior m turns negative
    those nodes are flagged non-geometric; integration stops there unless
    continue_past_pinch is set, in which case stepping continues for display
    only (the negative values are an artifact of stepping over the
    singularity and carry no quantitative meaning).
    """
    if p.kind != MANIFOLD3D:
        raise ValueError("fd_flow_3d expects a manifold3d profile")
    snaps = []
    t = p.t
    h, m = p.h.copy(), p.m.copy()
    pinched = bool((m <= 0.0).any())

    def snap(status):
        prof3 = MetricProfile(kind=MANIFOLD3D, rho=p.rho, h=h.copy(), m=m.copy(),
                              k2=p.k2, t=t, status=status)
        return Snapshot3D(profile=prof3, qualitative=True, non_geometric=m < 0.0)

    for target in schedule:
        if target < t:
            raise ValueError("schedule times must be nondecreasing")
        while t < target - 1e-18 * max(1.0, target):
            if pinched and not continue_past_pinch:
                break
            dt = target - t
            if max_dt is not None:
                dt = min(dt, max_dt)
            dh, dm = _raw_rhs_3d(p.rho, h, m, p.k2)
            h = h + dt * dh
            m = m + dt * dm
            t = min(target, t + dt)
            if not (np.isfinite(h).all() and np.isfinite(m).all()):
                snaps.append(snap(STATUS_UNSTABLE))
                return snaps
            pinched = pinched or bool((m <= 0.0).any())
        t = target
        snaps.append(snap(STATUS_PINCHED if pinched else STATUS_OK))
        if pinched and not continue_past_pinch:
            break
    return snaps


def _series_rhs_raw(h, m, k2):
    if m[0] <= 0.0:
        raise FloatingPointError("m0 <= 0: series state is pinched")
    mp = ps.diff(m)
    mpp = ps.diff(mp)
    hp = ps.diff(h)
    dh = (2.0 * ps.div(mpp, m)
          - ps.div(ps.mul(mp, mp), ps.mul(m, m))
          - ps.div(ps.mul(mp, hp), ps.mul(m, h)))
    dm = ps.div(mpp, h) - 0.5 * ps.div(ps.mul(mp, hp), ps.mul(h, h))
    dm[0] -= 2.0 * k2
    return dh, dm


def series_rhs(s):
    """Coefficient time-derivatives (dh_coef, dm_coef) by equating
    coefficients of the flow equations in order-10 series arithmetic."""
    return _series_rhs_raw(s.h_coef, s.m_coef, s.k2)


def _weighted_norm(c, r2):
    """Magnitude of an even series sampled over the neck neighborhood:
    sum |c_2i| r2^i with r2 the squared validity radius m0/m2."""
    acc = 0.0
    p = 1.0
    for i in range(0, ps.ORDER + 1, 2):
        acc += abs(c[i]) * p
        p *= r2
    return acc


def series_flow(s, stop_m0, eta=1e-3, dt_min=1e-15, sample_times=(), max_steps=5_000_000):
    """Adaptive explicit Euler on the coefficient ODEs until m0 <= stop_m0.

    The step is chosen so the relative change of each series, measured in a
    norm weighted at the neck validity radius rho* = sqrt(m0/m2), stays at
    or below eta; a step that overshoots 2*eta is halved and retried, with
    dt floored at dt_min.  Sample times are hit exactly (the step clamps to
    them) and recorded as (t, m0, h0, R(0), K_ab(0), K_bc(0)).
    """
    if stop_m0 <= 0.0:
        raise ValueError("stop_m0 must be positive")
    h = s.h_coef.copy()
    m = s.m_coef.copy()
    k2 = s.k2
    t = s.t
    samples = sorted(st for st in sample_times if st >= t)
    si = 0
    out = []
    steps = 0

    def record():
        state = SeriesState(h_coef=h, m_coef=m, k2=k2, t=t)
        c = curvatures_3d(state)
        out.append(SeriesSample(t=t, m0=float(m[0]), h0=float(h[0]),
                                R0=float(c.R), K_ab0=float(c.K_ab), K_bc0=float(c.K_bc)))

    while si < len(samples) and samples[si] <= t:
        record()
        si += 1
    while m[0] > stop_m0 and steps < max_steps:
        try:
            dh, dm = _series_rhs_raw(h, m, k2)
        except FloatingPointError:
            return SeriesTrajectory(tuple(out), STATUS_PINCHED, t, steps)
        # neck validity radius, capped at chart scale (m2 -> 0 for cylinders)
        r2 = min(m[0] / max(m[2], 1e-300), 1.0)
        nh, nm = _weighted_norm(h, r2), _weighted_norm(m, r2)
        rate = max(_weighted_norm(dh, r2) / nh, _weighted_norm(dm, r2) / nm)
        dt = eta / rate if rate > 0.0 else eta
        hit = False
        if si < len(samples) and t + dt >= samples[si]:
            dt = samples[si] - t
            hit = True
        while True:
            if dt < dt_min:
                return SeriesTrajectory(tuple(out), STATUS_UNSTABLE, t, steps)
            h_try = h + dt * dh
            m_try = m + dt * dm
            change = max(_weighted_norm(h_try - h, r2) / nh,
                         _weighted_norm(m_try - m, r2) / nm)
            if change <= 2.0 * eta or hit:
                break
            dt *= 0.5
            hit = False
        h, m = h_try, m_try
        t = samples[si] if hit else t + dt
        steps += 1
        if hit:
            record()
            si += 1
    status = STATUS_PINCHED if m[0] <= stop_m0 else STATUS_UNSTABLE
    return SeriesTrajectory(tuple(out), status, t, steps)
