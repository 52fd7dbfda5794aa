"""Truncated power-series (jet) arithmetic at fixed order.

Series are plain float arrays of coefficients [c0, c1, ..., cN]; every
operation equates coefficients through order N and assumes the higher ones
are zero.  Division requires a nonzero constant term and is solved
recursively coefficient by coefficient.  The neck-pinch integrator works at
order 10 with even series (odd coefficients identically zero); nothing here
depends on the parity, which the dynamics preserves on its own.
"""

import numpy as np

ORDER = 10


def zero(order=ORDER):
    return np.zeros(order + 1)


def const(value, order=ORDER):
    c = zero(order)
    c[0] = value
    return c


def mul(a, b):
    """Cauchy product truncated at the common order."""
    n = min(len(a), len(b)) - 1
    return np.convolve(a[: n + 1], b[: n + 1])[: n + 1]


def div(a, b):
    """Quotient q with mul(q, b) == a through the common order; b[0] != 0."""
    n = min(len(a), len(b)) - 1
    if b[0] == 0.0:
        raise ZeroDivisionError("series division needs a nonzero constant term")
    # plain floats: ~4x faster than numpy slicing at these tiny orders
    al = list(a[: n + 1])
    bl = list(b[: n + 1])
    b0 = bl[0]
    q = [0.0] * (n + 1)
    for i in range(n + 1):
        acc = al[i]
        for j in range(i):
            acc -= q[j] * bl[i - j]
        q[i] = acc / b0
    return np.array(q)


def diff(a):
    """Derivative; the top coefficient of the result is zero by truncation."""
    out = np.zeros(len(a))
    out[:-1] = a[1:] * np.arange(1, len(a))
    return out


def evaluate(a, x):
    """Horner evaluation at a scalar or array x."""
    acc = np.zeros_like(np.asarray(x, dtype=float))
    for c in a[::-1]:
        acc = acc * x + c
    return acc
