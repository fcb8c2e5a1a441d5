"""Roots of the eight transcendental equations tan(a*nu) +/- tanh/coth(b*nu) = 0.

Each symmetry class and variable family of separated harmonic Steklov
eigenfunctions on the rectangle has one such determining equation. The
positive roots nu parameterize the spectrum, one root per pole-to-pole
window of the tangent term, so brackets can be written down analytically
and bisection is guaranteed to converge.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "SymmetryClass",
    "Family",
    "DeterminingEquation",
    "PoleProximityError",
    "BracketError",
    "NonConvergenceError",
    "residual",
    "bracket",
    "solve_nu",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-12

# Bisection alone when tol is coarser than this; below it, a Newton polish
# runs so the default tolerance reaches full double precision.
_POLISH_CUTOFF = 1e-9

# Relative guard band around poles of the tangent term.
_POLE_GUARD = 1e-8


class SymmetryClass(enum.Enum):
    """Parity of the eigenfunction in (x, y)."""

    I = "I"      # even, even
    II = "II"    # odd, odd
    III = "III"  # even, odd
    IV = "IV"    # odd, even

    @property
    def even_x(self) -> bool:
        return self in (SymmetryClass.I, SymmetryClass.III)

    @property
    def even_y(self) -> bool:
        return self in (SymmetryClass.I, SymmetryClass.IV)


class Family(enum.Enum):
    """Which variable carries the hyperbolic factor of the eigenfunction."""

    X = "x"  # hyperbolic in x: tan(alpha*nu) vs tanh/coth(nu)
    Y = "y"  # hyperbolic in y: tan(nu) vs tanh/coth(alpha*nu)


class PoleProximityError(ArithmeticError):
    """nu is too close to a pole of the tangent term to evaluate reliably."""


class BracketError(ArithmeticError):
    """The analytic bracket failed to show a sign change (should not happen)."""


class NonConvergenceError(ArithmeticError):
    """Iteration budget exhausted; the tolerance is below what doubles allow."""


@dataclass(frozen=True)
class DeterminingEquation:
    """residual(nu) = tan(a*nu) + sign * hyp(b*nu) for one (class, family)."""

    symmetry_class: SymmetryClass
    family: Family
    alpha: float

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")

    @property
    def tan_scale(self) -> float:
        """a: the tangent argument is a*nu."""
        return self.alpha if self.family == Family.X else 1.0

    @property
    def hyp_scale(self) -> float:
        """b: the hyperbolic argument is b*nu."""
        return 1.0 if self.family == Family.X else self.alpha

    @property
    def uses_coth(self) -> bool:
        # Equating the edge ratios F'/F (tanh or coth) and G'/G (-tan or cot)
        # gives tan = -tanh/-coth for a cos trig factor but tan = 1/tanh etc.
        # for a sin factor, so the equation carries tanh exactly when the two
        # factor parities agree (cosh*cos, sinh*sin) and coth when they differ.
        if self.family == Family.X:
            hyp_even, trig_even = self.symmetry_class.even_x, self.symmetry_class.even_y
        else:
            hyp_even, trig_even = self.symmetry_class.even_y, self.symmetry_class.even_x
        return hyp_even != trig_even

    @property
    def sign(self) -> int:
        """+1 when the equation reads tan = -hyp, -1 when tan = +hyp."""
        cls, fam = self.symmetry_class, self.family
        if cls == SymmetryClass.I:
            return +1
        if cls == SymmetryClass.II:
            return -1
        if cls == SymmetryClass.III:
            return -1 if fam == Family.X else +1
        return +1 if fam == Family.X else -1


def _coth(u: float) -> float:
    return 1.0 / math.tanh(u)


def residual(eq: DeterminingEquation, nu: float) -> float:
    """Left-minus-right side of the determining equation at nu > 0.

    Raises PoleProximityError within a relative guard band of the tangent
    poles, where the value would be dominated by cancellation; callers must
    shrink their interval instead of trusting a value there.
    """
    if nu <= 0.0:
        raise ValueError(f"nu must be positive, got {nu}")
    theta = eq.tan_scale * nu
    # Distance from theta to the nearest pole (k + 1/2)*pi of tan.
    k = math.floor(theta / math.pi)
    dist = abs(theta - (k + 0.5) * math.pi)
    if dist < _POLE_GUARD * max(1.0, abs(theta)):
        raise PoleProximityError(
            f"nu={nu} within guard distance of a tangent pole (theta={theta})"
        )
    hyp = _coth if eq.uses_coth else math.tanh
    return math.tan(theta) + eq.sign * hyp(eq.hyp_scale * nu)


def bracket(eq: DeterminingEquation, j: int) -> tuple[float, float]:
    """Interval containing exactly the j-th positive root, free of interior poles.

    The tangent term sweeps all reals once per pole-to-pole window while the
    hyperbolic term stays in (0,1) or (1,inf), so each window holds exactly
    one root; which half-window, and whether window 0 contributes, depends on
    the sign and on tanh vs coth:

    * tan = -tanh: roots where tan is in (-1,0); none in window 0.
    * tan = +tanh: roots where tan is in (0,1); window 0 has a root only for
      the X family with alpha < 1 (at alpha = 1 that root collapses into the
      nu = 0 double root replaced by the xy eigenfunction).
    * tan = +coth: roots where tan > 1, one per window starting at window 0.
    * tan = -coth: roots where tan < -1; none in window 0.
    """
    if j < 1:
        raise ValueError(f"root index must be >= 1, got {j}")
    a = eq.tan_scale
    half = 0.5 * math.pi / a
    if not eq.uses_coth:
        if eq.sign > 0:  # tan = -tanh
            return ((2 * j - 1) * half, 2 * j * half)
        # tan = +tanh
        n0 = 1 if eq.tan_scale < eq.hyp_scale else 0
        k = j - n0
        return (2 * k * half, (2 * k + 1) * half)
    if eq.sign < 0:  # tan = +coth
        k = j - 1
        return (2 * k * half, (2 * k + 1) * half)
    # tan = -coth
    return ((2 * j - 1) * half, 2 * j * half)


def _safe_endpoints(eq: DeterminingEquation, lo: float, hi: float) -> tuple[float, float, float, float]:
    """Nudge bracket endpoints inward past pole guards until signs differ."""
    span = hi - lo
    nudge = max(2.0 * _POLE_GUARD * max(1.0, hi * eq.tan_scale) / eq.tan_scale, 1e-13 * span)
    for _ in range(8):
        a = max(lo + nudge, 1e-300)
        b = hi - nudge
        try:
            fa = residual(eq, a)
            fb = residual(eq, b)
        except PoleProximityError:
            nudge *= 4.0
            continue
        if math.copysign(1.0, fa) != math.copysign(1.0, fb):
            return a, b, fa, fb
        nudge *= 0.25
    raise BracketError(f"no sign change on bracket ({lo}, {hi}) for {eq}")


def solve_nu(eq: DeterminingEquation, j: int, tol: float = DEFAULT_TOL) -> float:
    """The j-th strictly positive root of the determining equation.

    The root is localized within tol: plain bisection down to that width for
    coarse tolerances, bisection plus a bracketed Newton polish for tight
    ones. Roots are strictly increasing in j and successive differences
    approach pi / tan_scale.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    lo, hi = bracket(eq, j)
    lo, hi, flo, fhi = _safe_endpoints(eq, lo, hi)

    coarse = max(tol, _POLISH_CUTOFF) if tol >= _POLISH_CUTOFF else 1e-6
    while hi - lo > coarse:
        mid = 0.5 * (lo + hi)
        fm = residual(eq, mid)
        if fm == 0.0:
            return mid
        if math.copysign(1.0, fm) == math.copysign(1.0, flo):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    x = 0.5 * (lo + hi)
    if tol >= _POLISH_CUTOFF:
        return x

    # Newton polish, kept inside the bracket so tangent poles stay out of reach.
    a, b, s = eq.tan_scale, eq.hyp_scale, eq.sign
    for _ in range(60):
        f = residual(eq, x)
        if math.copysign(1.0, f) == math.copysign(1.0, flo):
            lo = x
        else:
            hi = x
        t = math.tan(a * x)
        if b * x > 350.0:  # sech^2 / csch^2 underflow far below double eps
            dhyp = 0.0
        elif eq.uses_coth:
            sh = math.sinh(b * x)
            dhyp = -b / (sh * sh)
        else:
            ch = math.cosh(b * x)
            dhyp = b / (ch * ch)
        fp = a * (1.0 + t * t) + s * dhyp
        step = f / fp
        x_new = x - step
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
            step = x_new - x
        x = x_new
        # converge only when the requested localization is certified, either
        # by a small nonzero Newton step or by the bracket width itself
        if (0.0 < abs(step) <= 0.25 * tol) or (hi - lo) <= tol:
            return x
    raise NonConvergenceError(
        f"root polish for {eq}, j={j} did not reach tol={tol}; "
        "tolerance is likely below double precision"
    )
