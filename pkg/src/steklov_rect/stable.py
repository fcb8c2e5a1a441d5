"""Overflow-safe building blocks for products of hyperbolic and trig factors.

cosh(nu)**2 overflows doubles near nu = 355 while the boundary-normalized
eigenfunctions stay O(1), so everything here works with logarithms of the
hyperbolic magnitudes and with exp(-2u)-scaled edge integrals.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "log_cosh",
    "log_sinh",
    "signed_exp_cosh",
    "signed_exp_sinh",
    "mean_sq_cos",
    "mean_sq_sin",
    "mean_sq_cosh_scaled",
    "mean_sq_sinh_scaled",
    "cosh_sq_scaled",
    "sinh_sq_scaled",
    "exp_or_inf",
]

_LOG2 = math.log(2.0)


def log_cosh(u):
    """log(cosh(u)) for u >= 0, elementwise, without overflow."""
    u = np.asarray(u, dtype=float)
    return u + np.log1p(np.exp(-2.0 * u)) - _LOG2


def log_sinh(u):
    """log(sinh(u)) for u > 0, elementwise; -inf at u = 0."""
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore"):
        return u + np.log1p(-np.exp(-2.0 * u)) - _LOG2


def signed_exp_cosh(u, log_amp):
    """exp(log_amp) * cosh(u) for any sign of u, evaluated in log space."""
    u = np.asarray(u, dtype=float)
    return np.exp(log_amp + log_cosh(np.abs(u)))


def signed_exp_sinh(u, log_amp):
    """exp(log_amp) * sinh(u) for any sign of u, evaluated in log space."""
    u = np.asarray(u, dtype=float)
    mag = np.exp(log_amp + log_sinh(np.abs(u)))
    return np.sign(u) * mag


def _series_even(u2_times4, alternating: bool) -> float:
    """sum_{k>=1} (+-1)^(k+1) (2u)^(2k) / (2k+1)! given (2u)^2, for |2u| < 1."""
    w = u2_times4  # (2u)^2
    term = w / 6.0
    total = term
    sign = -1.0 if alternating else 1.0
    fact_arg = 3
    for _ in range(8):
        fact_arg += 2
        term = term * w / (fact_arg * (fact_arg - 1))
        total += sign * term
        sign = -sign if alternating else sign
    return total


def mean_sq_cos(u: float) -> float:
    """(1/L) * integral_{-L}^{L} cos(nu t)^2 dt with u = nu L, i.e. 1 + sinc(2u)."""
    if u == 0.0:
        return 2.0
    return 1.0 + math.sin(2.0 * u) / (2.0 * u)


def mean_sq_sin(u: float) -> float:
    """1 - sinc(2u); series below u = 0.25 where the subtraction cancels."""
    if u < 0.25:
        return _series_even(4.0 * u * u, alternating=True)
    return 1.0 - math.sin(2.0 * u) / (2.0 * u)


def mean_sq_cosh_scaled(u: float) -> float:
    """exp(-2u) * (1 + sinh(2u)/(2u)); stable for every u > 0."""
    if u == 0.0:
        return 2.0
    return math.exp(-2.0 * u) + (-math.expm1(-4.0 * u)) / (4.0 * u)


def mean_sq_sinh_scaled(u: float) -> float:
    """exp(-2u) * (sinh(2u)/(2u) - 1); series below u = 0.25."""
    if u < 0.25:
        return math.exp(-2.0 * u) * _series_even(4.0 * u * u, alternating=False)
    return (-math.expm1(-4.0 * u)) / (4.0 * u) - math.exp(-2.0 * u)


def cosh_sq_scaled(u: float) -> float:
    """(cosh(u) * exp(-u))**2 = ((1 + exp(-2u))/2)**2."""
    t = 0.5 * (1.0 + math.exp(-2.0 * u))
    return t * t


def sinh_sq_scaled(u: float) -> float:
    """(sinh(u) * exp(-u))**2 = ((1 - exp(-2u))/2)**2."""
    t = 0.5 * (-math.expm1(-2.0 * u))
    return t * t


def exp_or_inf(logv: float) -> float:
    """exp(logv) saturating to inf/0.0 instead of raising on over/underflow."""
    if logv > 709.0:
        return math.inf
    if logv < -745.0:
        return 0.0
    return math.exp(logv)
