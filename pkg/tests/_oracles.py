"""Independent numerical oracles used to freeze expected values in tests.

Everything here deliberately avoids the library's own evaluation paths:
roots come from scipy's brentq on directly-written residuals, boundary
integrals from scipy's fixed_quad on directly-written profiles.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import fixed_quad
from scipy.optimize import brentq


def root_in(fn, lo, hi):
    """Tight brentq root in (lo, hi), nudged off the endpoints."""
    span = hi - lo
    return brentq(fn, lo + 1e-12 * span + 1e-300, hi - 1e-12 * span, xtol=1e-15, rtol=8.9e-16)


def boundary_integral(fn_xy, alpha, n=160):
    """integral over the rectangle boundary of fn(x, y), single high-order panel per edge."""
    total = 0.0
    # x = 1 and x = -1, y in (-alpha, alpha)
    for xfix in (1.0, -1.0):
        val, _ = fixed_quad(lambda y: fn_xy(np.full_like(y, xfix), y), -alpha, alpha, n=n)
        total += val
    # y = alpha and y = -alpha, x in (-1, 1)
    for yfix in (alpha, -alpha):
        val, _ = fixed_quad(lambda x: fn_xy(x, np.full_like(x, yfix)), -1.0, 1.0, n=n)
        total += val
    return total


def boundary_mean(fn_xy, alpha, n=160):
    return boundary_integral(fn_xy, alpha, n=n) / (4.0 * (1.0 + alpha))


def raw_profile(even_x: bool, even_y: bool, hyp_in_x: bool, nu: float):
    """Unnormalized separated eigenfunction profile, written directly."""

    def fn(x, y):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        if hyp_in_x:
            hx = np.cosh(nu * x) if even_x else np.sinh(nu * x)
            ty = np.cos(nu * y) if even_y else np.sin(nu * y)
            return hx * ty
        tx = np.cos(nu * x) if even_x else np.sin(nu * x)
        hy = np.cosh(nu * y) if even_y else np.sinh(nu * y)
        return tx * hy

    return fn


def fd_laplacian(fn, x, y, h=1e-4):
    """Five-point finite-difference Laplacian."""
    return (fn(x + h, y) + fn(x - h, y) + fn(x, y + h) + fn(x, y - h) - 4.0 * fn(x, y)) / (h * h)


def fd_normal_derivative(fn, x, y, nx, ny, h=1e-6):
    """Second-order one-sided normal derivative, stepping inward from (x, y)."""
    f0 = fn(x, y)
    f1 = fn(x - nx * h, y - ny * h)
    f2 = fn(x - 2 * nx * h, y - 2 * ny * h)
    return (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * h)
