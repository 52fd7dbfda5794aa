"""Finite-difference stencils shared by the surface and 3-manifold flows.

All profiles handled by this package are even about the ends of their
rho-interval (reflection symmetry through the poles / through the neck and
bulge), so end rows use even-reflection ghost values.  Interior rows are
plain second-order central differences.
"""

import numpy as np


def d1(f, dx):
    """First derivative; end rows are 0 (even reflection kills them)."""
    out = np.empty_like(f)
    out[1:-1] = (f[2:] - f[:-2]) / (2.0 * dx)
    out[0] = 0.0
    out[-1] = 0.0
    return out


def d2(f, dx):
    """Second derivative with even-reflection ghost rows at both ends."""
    out = np.empty_like(f)
    out[1:-1] = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / dx**2
    out[0] = 2.0 * (f[1] - f[0]) / dx**2
    out[-1] = 2.0 * (f[-2] - f[-1]) / dx**2
    return out


def d4_end(f, dx, left=True):
    """Fourth derivative at an end node, even reflection, O(dx^2)."""
    g = f if left else f[::-1]
    return (6.0 * g[0] - 8.0 * g[1] + 2.0 * g[2]) / dx**4


def end_slope(f, dx, left=True):
    """One-sided sixth-order first derivative at an end node.

    Used for pole-smoothness checks, which run at tolerances well below
    what low-order stencils resolve on the spikier family members.
    """
    g = f if left else f[::-1]
    s = (-49.0 / 20.0 * g[0] + 6.0 * g[1] - 15.0 / 2.0 * g[2] + 20.0 / 3.0 * g[3]
         - 15.0 / 4.0 * g[4] + 6.0 / 5.0 * g[5] - 1.0 / 6.0 * g[6]) / dx
    return s if left else -s


def mirror(f):
    """Make f exactly symmetric under index reflection (first half wins)."""
    out = f.copy()
    n = len(f)
    out[n - n // 2:] = out[: n // 2][::-1]
    return out


def symmetric_grid(n, length):
    """Uniform grid on [0, length] that is bit-exactly mirror symmetric."""
    g = np.linspace(0.0, length, n)
    return 0.5 * (g + (length - g[::-1]))
