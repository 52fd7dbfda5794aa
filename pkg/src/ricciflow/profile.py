"""Metrics of revolution: domain types, the initial-shape family, and
geometric functionals.

A metric of revolution is stored in chart form on a rho-grid as the pair of
metric components (h, m),

    g = h(rho) d rho^2 + m(rho) d theta^2,

with sqrt(m) the distance from the axis of rotation.  Closed surfaces live
on rho in [0, pi] with m = 0 at both poles; smoothness there requires
|d sqrt(m)/d rho| = sqrt(h).  The initial surfaces form a two-parameter
family

    sqrt(m) = (sin rho + c3 sin 3 rho + c5 sin 5 rho) / (1 + 3 c3 + 5 c5),

with h = 1, which satisfies the pole condition exactly for every (c3, c5).
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .stencils import d1, d2, d4_end, end_slope, mirror, symmetric_grid

SURFACE = "surface2d"
MANIFOLD3D = "manifold3d"

STATUS_OK = "ok"
STATUS_UNSTABLE = "unstable"
STATUS_PINCHED = "pinched"

TOL_POLE = 1e-6
TOL_EMBED = 1e-6

#: grid used to decide whether a (c3, c5) pair is admissible
ADMISSIBILITY_PROBE_N = 512


@dataclass(frozen=True)
class MetricProfile:
    """Sampled metric of revolution; the state that flows.

    Instances are immutable: the arrays are frozen at construction and every
    operation returns a new profile, so values are safe to share across
    threads.
    """

    kind: str
    rho: np.ndarray
    h: np.ndarray
    m: np.ndarray
    k2: float = 0.0
    t: float = 0.0
    status: str = STATUS_OK

    def __post_init__(self):
        for name in ("rho", "h", "m"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if not (len(self.rho) == len(self.h) == len(self.m)):
            raise ValueError("rho, h, m must have equal length")

    @property
    def n(self):
        return len(self.rho)

    @property
    def drho(self):
        return self.rho[1] - self.rho[0]

    def with_fields(self, **kw):
        return replace(self, **kw)

    def sqrt_m(self):
        return np.sqrt(np.clip(self.m, 0.0, None))


@dataclass(frozen=True)
class ShapeParams:
    """Coefficients (c3, c5) selecting a member of the initial family."""

    c3: float
    c5: float


@dataclass(frozen=True)
class SpectralCoefficients:
    """Mode amplitudes of h over cos(2 i rho) and sqrt(m) over sin((2i+1) rho)."""

    h_modes: np.ndarray
    m_modes: np.ndarray

    def pole_slope(self):
        """Slope of the sqrt(m) series at rho = 0 (and -slope at rho = pi)."""
        k = 2 * np.arange(len(self.m_modes)) + 1
        return float((k * self.m_modes).sum())


@dataclass(frozen=True)
class GeneratingCurve:
    """Planar cross-section (x, y) whose revolution realizes the metric.

    Nodes where the profile cannot be realized (negative radicand, i.e.
    m < 0 or slope exceeding sqrt(h)) are omitted; ``complete`` is False in
    that case and ``accepted`` lists the surviving grid indices.
    """

    points: np.ndarray
    accepted: np.ndarray
    complete: bool

    @property
    def x(self):
        return self.points[:, 0]

    @property
    def y(self):
        return self.points[:, 1]


@dataclass(frozen=True)
class EmbeddabilityReport:
    embeddable: bool
    max_ratio: float
    argmax_rho: float


def family_sqrt_m(rho, c3, c5):
    """sqrt(m) of the initial family, normalized to unit pole slope."""
    den = 1.0 + 3.0 * c3 + 5.0 * c5
    return (np.sin(rho) + c3 * np.sin(3.0 * rho) + c5 * np.sin(5.0 * rho)) / den


def check_admissible(params, n=ADMISSIBILITY_PROBE_N):
    """Probe a (c3, c5) pair on a fixed fine grid.

    Admissible means the resulting sqrt(m) is positive on the open interval
    and the embeddability ratio stays at or below 1.  Returns
    (ok, first_violated_condition).
    """
    den = 1.0 + 3.0 * params.c3 + 5.0 * params.c5
    if abs(den) < 1e-12:
        return False, "degenerate normalization (1 + 3 c3 + 5 c5 = 0)"
    rho = symmetric_grid(n, np.pi)
    u = family_sqrt_m(rho, params.c3, params.c5)
    if u[1:-1].min() <= 0.0:
        return False, "positivity (sqrt(m) <= 0 on the interior)"
    du = (u[2:] - u[:-2]) / (2.0 * (rho[1] - rho[0]))
    if np.abs(du).max() > 1.0 + TOL_EMBED:
        return False, "embeddability (|d sqrt(m)/d rho| > sqrt(h))"
    return True, ""


def make_initial_surface(params, n):
    """Sample a family member on a uniform n-node grid over [0, pi].

    The pole smoothness condition holds exactly by construction.  Raises
    ValueError naming the first violated condition for inadmissible params.
    """
    if n < 32 or n % 2:
        raise ValueError("grid size must be even and at least 32")
    ok, why = check_admissible(params)
    if not ok:
        raise ValueError(f"inadmissible shape parameters: {why}")
    rho = symmetric_grid(n, np.pi)
    u = family_sqrt_m(rho, params.c3, params.c5)
    m = mirror(u * u)  # libm sin(pi - x) != sin(x) in the last ulp
    m[0] = 0.0
    m[-1] = 0.0
    return MetricProfile(kind=SURFACE, rho=rho, h=np.ones(n), m=m)


def embeddability_check(p):
    """Max over interior nodes of |d sqrt(m)/d rho| / sqrt(h).

    The surface embeds as a classical surface of revolution iff this ratio
    stays at or below 1 away from the poles.
    """
    u = p.sqrt_m()
    du = (u[2:] - u[:-2]) / (2.0 * p.drho)
    ratio = np.abs(du) / np.sqrt(p.h[1:-1])
    i = int(np.argmax(ratio))
    return EmbeddabilityReport(
        embeddable=bool(ratio[i] <= 1.0 + TOL_EMBED),
        max_ratio=float(ratio[i]),
        argmax_rho=float(p.rho[1 + i]),
    )


def pole_slopes(p):
    """(slope at rho=0, -slope at rho=pi) of sqrt(m), fourth-order stencils."""
    u = p.sqrt_m()
    return end_slope(u, p.drho, left=True), end_slope(u, p.drho, left=False)


def pole_smoothness_ok(p, tol=TOL_POLE):
    s0, s1 = pole_slopes(p)
    r0 = abs(s0 - np.sqrt(p.h[0])) / np.sqrt(p.h[0])
    r1 = abs(-s1 - np.sqrt(p.h[-1])) / np.sqrt(p.h[-1])
    return max(r0, r1) <= tol


def generating_curve(p):
    """Cross-section x(rho) = integral of sqrt(h - (d sqrt(m)/d rho)^2), y = sqrt(m).

    The operation is total: nodes with a negative radicand (the profile is
    locally not realizable as a surface of revolution there) are omitted
    from the returned curve and complete=False.
    """
    u = p.sqrt_m()
    du = np.empty_like(u)
    # difference against actual node positions: at very fine grids the
    # rounding of the positions themselves dominates a constant-spacing rule
    du[1:-1] = (u[2:] - u[:-2]) / (p.rho[2:] - p.rho[:-2])
    du[0] = end_slope(u, p.drho, left=True)
    du[-1] = end_slope(u, p.drho, left=False)
    radicand = p.h - du * du
    # radicands within embeddability round-off of zero count as zero
    valid = (radicand >= -2.0 * TOL_EMBED * p.h) & (p.m >= 0.0)
    radical = np.sqrt(np.clip(radicand, 0.0, None))
    x = np.concatenate([[0.0], cumulative_trapezoid(radical, p.rho)])
    accepted = np.nonzero(valid)[0]
    points = np.column_stack([x[accepted], u[accepted]])
    return GeneratingCurve(points=points, accepted=accepted, complete=bool(valid.all()))


def gauss_curvature(p):
    """Gaussian curvature K from the same discrete stencils as the flow.

    End rows carry the pole limit; they get zero weight in the area element
    anyway since sqrt(h m) vanishes there.
    """
    u = p.sqrt_m()
    dx = p.drho
    upp = d2(u, dx)
    up = d1(u, dx)
    hp = d1(p.h, dx)
    K = np.empty_like(u)
    sl = slice(1, -1)
    K[sl] = -upp[sl] / (u[sl] * p.h[sl]) + up[sl] * hp[sl] / (2.0 * u[sl] * p.h[sl] ** 2)
    for idx, left in ((0, True), (-1, False)):
        m4 = d4_end(p.m, dx, left)
        m2 = d2(p.m, dx)[idx]
        h2 = d2(p.h, dx)[idx]
        K[idx] = (h2 / (2.0 * p.h[idx]) - m4 / (4.0 * m2)) / p.h[idx] if m2 != 0 else np.nan
    return K


def area(p):
    """Surface area 2 pi * integral of sqrt(h m) d rho (trapezoid)."""
    if p.kind != SURFACE:
        raise ValueError("area is defined for surface2d profiles")
    return float(2.0 * np.pi * np.trapezoid(np.sqrt(np.clip(p.h * p.m, 0.0, None)), p.rho))


def total_curvature(p):
    """Integral of K dA; equals 4 pi for any closed ok surface (Gauss-Bonnet)."""
    if p.kind != SURFACE:
        raise ValueError("total_curvature is defined for surface2d profiles")
    K = gauss_curvature(p)
    w = np.sqrt(np.clip(p.h * p.m, 0.0, None))
    integrand = np.where(w > 0.0, K * w, 0.0)
    return float(2.0 * np.pi * np.trapezoid(integrand, p.rho))
