"""Truncated expansions of boundary data in the Steklov basis.

A Dirichlet expansion reproduces harmonic boundary data; evaluating the
series inside the rectangle solves the Dirichlet problem, and a reweighting
of the same coefficients solves Robin problems (Neumann as the t -> 0
limit). The center of the rectangle is special: only the even-even modes
contribute there and their values shrink geometrically, which yields a
certified error bound for the central value.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import boundary as bd
from .geometry import Rectangle, check_interior
from .modes import (
    Family,
    ModeId,
    ModeKind,
    SteklovMode,
    SymmetryClass,
    evaluate,
    first_modes,
    resolve,
)
from .roots import DEFAULT_TOL, DeterminingEquation, solve_nu

__all__ = [
    "ExpansionTerm",
    "SteklovExpansion",
    "CentralValueResult",
    "EnergyTail",
    "IncompatibleDataError",
    "expand_dirichlet",
    "expand_for_central",
    "solve_robin",
    "solve_neumann",
    "evaluate_interior",
    "central_value",
    "energy_tail",
    "expansion_to_dict",
    "expansion_from_dict",
    "save_expansion",
    "load_expansion",
]

# Tail constants for the central-value certificate on the square: each omitted
# index j contributes at most 2 * 4.53 * exp(-nu_j) * ||h||, and consecutive
# nu are at least pi/2 apart, which the geometric sum below uses.
_PAIR_BOUND = 9.06
_CENTER_COEFF = 0.41
_CENTER_COEFF_MIN_INDEX = 3


class IncompatibleDataError(ValueError):
    """Neumann data with nonzero boundary mean has no solution."""


@dataclass(frozen=True)
class ExpansionTerm:
    mode: SteklovMode
    coefficient: float


@dataclass(frozen=True)
class SteklovExpansion:
    """Mean term plus coefficients against modes sorted by eigenvalue.

    kind is "dirichlet" or "robin"; t is the Robin interpolation parameter
    (None for Dirichlet). data_norm is the mean-L2 boundary norm of the data
    the expansion was built from; it is not serialized, so expansions loaded
    from JSON carry None and report an infinite central-value bound.
    """

    alpha: float
    kind: str
    t: Optional[float]
    mean_term: float
    terms: tuple[ExpansionTerm, ...]
    quad_order: int
    data_norm: Optional[float] = None

    @property
    def truncation_M(self) -> int:
        return len(self.terms)

    @property
    def rect(self) -> Rectangle:
        return Rectangle(self.alpha)


@dataclass(frozen=True)
class CentralValueResult:
    """Center value with a certified error radius in terms of the data norm."""

    value: float
    m: int
    bound: float
    data_norm: Optional[float]


@dataclass(frozen=True)
class EnergyTail:
    """Finite-energy diagnostic: sum (1 + delta_j) c_j^2 and its tail share."""

    total: float
    tail_ratio: float


def _build(
    h: bd.BoundaryFunction,
    alpha: float,
    modes: Sequence[SteklovMode],
    order: int,
    kind: str,
    t: Optional[float],
    weights=None,
) -> SteklovExpansion:
    rect = Rectangle(alpha)
    raw_mean = bd.mean(h, rect=rect, order=order)
    norm = bd.boundary_norm(h, rect=rect, order=order)
    mean_term = raw_mean if t is None else raw_mean / t
    terms = []
    for mode in modes:
        c = bd.coefficient(h, mode, order=order)
        if weights is not None:
            c = c / weights(mode)
        terms.append(ExpansionTerm(mode, c))
    return SteklovExpansion(alpha, kind, t, mean_term, tuple(terms), order, norm)


def expand_dirichlet(
    h: bd.BoundaryFunction,
    alpha: float,
    M: int,
    order: int = 32,
    classes: Optional[Sequence[SymmetryClass]] = None,
    tol: float = DEFAULT_TOL,
) -> SteklovExpansion:
    """Expansion of boundary data against the first M modes in eigenvalue order.

    classes restricts the mode set; data with a known parity pattern only
    excites the matching classes, so restricting spends the whole truncation
    budget on modes that can contribute.
    """
    if M < 0:
        raise ValueError(f"M must be >= 0, got {M}")
    modes = first_modes(alpha, M, classes=classes, tol=tol)
    return _build(h, alpha, modes, order, "dirichlet", None)


def expand_for_central(
    h: bd.BoundaryFunction,
    alpha: float,
    m: int,
    order: int = 32,
    tol: float = DEFAULT_TOL,
) -> SteklovExpansion:
    """Expansion holding exactly the first m modes of each class-I family.

    Only class I is nonzero at the origin, and the certified central-value
    bound is indexed by how many complete class-I pairs are present, so this
    is the natural truncation for central-value work.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    modes = [
        resolve(ModeId.separated(SymmetryClass.I, fam, j), alpha, tol)
        for j in range(1, m + 1)
        for fam in (Family.X, Family.Y)
    ]
    modes.sort(key=SteklovMode.sort_key)
    return _build(h, alpha, modes, order, "dirichlet", None)


def solve_robin(
    eta: bd.BoundaryFunction,
    alpha: float,
    t: float,
    M: int,
    order: int = 32,
    classes: Optional[Sequence[SymmetryClass]] = None,
    tol: float = DEFAULT_TOL,
) -> SteklovExpansion:
    """Solution of (1-t) * normal derivative + t * h = eta on the boundary.

    Coefficients are the Dirichlet ones divided by (1-t)*delta + t; at t = 1
    the divisor is exactly 1.0, so the result matches expand_dirichlet bit
    for bit under identical quadrature.
    """
    if not (0.0 < t <= 1.0):
        raise ValueError(f"Robin parameter must satisfy 0 < t <= 1, got {t}")
    if M < 0:
        raise ValueError(f"M must be >= 0, got {M}")
    modes = first_modes(alpha, M, classes=classes, tol=tol)
    return _build(
        eta, alpha, modes, order, "robin", t, weights=lambda m: (1.0 - t) * m.delta + t
    )


def solve_neumann(
    eta: bd.BoundaryFunction,
    alpha: float,
    M: int,
    order: int = 32,
    classes: Optional[Sequence[SymmetryClass]] = None,
    tol: float = DEFAULT_TOL,
    compat_tol: Optional[float] = None,
) -> SteklovExpansion:
    """Mean-zero solution of the Neumann problem, the t -> 0 limit of Robin.

    Solvable only for (numerically) mean-zero data: the compatibility
    tolerance defaults to 1e-9 * (1 + ||eta||) so quadrature-level noise on
    the mean does not spuriously reject valid data.
    """
    if M < 0:
        raise ValueError(f"M must be >= 0, got {M}")
    rect = Rectangle(alpha)
    norm = bd.boundary_norm(eta, rect=rect, order=order)
    eta_mean = bd.mean(eta, rect=rect, order=order)
    limit = 1e-9 * (1.0 + norm) if compat_tol is None else compat_tol
    if abs(eta_mean) > limit:
        raise IncompatibleDataError(
            f"Neumann data must have zero boundary mean; |mean| = {abs(eta_mean):.3e} > {limit:.3e}"
        )
    modes = first_modes(alpha, M, classes=classes, tol=tol)
    terms = tuple(
        ExpansionTerm(mode, bd.coefficient(eta, mode, order=order) / mode.delta) for mode in modes
    )
    return SteklovExpansion(alpha, "robin", 0.0, 0.0, terms, order, norm)


def evaluate_interior(e: SteklovExpansion, x, y):
    """Value of the truncated series at points of the closed rectangle.

    Accuracy is guaranteed on compact interior subsets; on the boundary the
    finite sum is still well defined but only converges in the mean.
    """
    rect = e.rect
    check_interior(rect, x, y)
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    out = np.full(np.broadcast(xa, ya).shape, e.mean_term, dtype=float)
    for term in e.terms:
        out = out + term.coefficient * evaluate(term.mode, xa, ya)
    return float(out) if out.ndim == 0 else out


def _class_one_prefix(e: SteklovExpansion, family: Family) -> list[ExpansionTerm]:
    """Class-I terms of one family forming a complete index prefix 1..m."""
    by_index = {
        t.mode.index: t
        for t in e.terms
        if t.mode.kind == ModeKind.SEPARATED
        and t.mode.symmetry_class == SymmetryClass.I
        and t.mode.family == family
    }
    out = []
    j = 1
    while j in by_index:
        out.append(by_index[j])
        j += 1
    return out


def _square_tail_bound(m: int, alpha: float, tol: float) -> float:
    """Certified |h(0,0) - h_m(0,0)| / ||h|| on the square.

    The closed 0.41 * exp(-nu_m) coefficient is valid from m = 3 on; below
    that the geometric tail summed from nu_{m+1} is used, which is valid for
    every m.
    """
    eq = DeterminingEquation(SymmetryClass.I, Family.X, alpha)
    if m >= _CENTER_COEFF_MIN_INDEX:
        nu_m = solve_nu(eq, m, tol)
        return _CENTER_COEFF * math.exp(-nu_m)
    nu_next = solve_nu(eq, m + 1, tol)
    return _PAIR_BOUND * math.exp(-nu_next) / (1.0 - math.exp(-math.pi))


def _rect_tail_bound(m: int, alpha: float) -> float:
    """Certified central tail on a strict rectangle from per-term bounds.

    Each omitted class-I term of family X/Y contributes at most
    sqrt(perimeter * c_bound); the c bounds only need the analytic root
    windows nu_j in ((j-1/2) pi/a, j pi/a), so no further root solving is
    required and the sum collapses geometrically.
    """
    per = 4.0 * (1.0 + alpha)
    total = 0.0
    for j in range(m + 1, m + 501):
        nu1_lo = (j - 0.5) * math.pi / alpha
        nu1_hi = j * math.pi / alpha
        c1 = min(
            2.56 / alpha * math.exp(-2.0 * nu1_lo),
            4.0 * nu1_hi * math.exp(-2.0 * alpha * nu1_lo),
        )
        nu2_lo = (j - 0.5) * math.pi
        c2 = 2.56 * math.exp(-2.0 * alpha * nu2_lo)
        term = math.sqrt(per * c1) + math.sqrt(per * c2)
        total += term
        if term < 1e-17 * total:
            break
    return total


def central_value(e: SteklovExpansion, tol: float = DEFAULT_TOL) -> CentralValueResult:
    """Value at the origin with a certified error radius.

    Only class-I terms are summed (all other classes vanish at the origin
    identically). m is the number of complete class-I pairs present; the
    bound covers everything the truncation omitted, scaled by the data norm
    recorded at expansion time (infinite when that norm is unknown).
    """
    fam_x = _class_one_prefix(e, Family.X)
    fam_y = _class_one_prefix(e, Family.Y)
    value = e.mean_term
    for term in fam_x + fam_y:
        value += term.coefficient * term.mode.scale  # evaluate at (0,0) = scale
    m = min(len(fam_x), len(fam_y))
    if e.data_norm is None:
        return CentralValueResult(value, m, math.inf, None)
    if e.alpha == 1.0:
        per_norm = _square_tail_bound(m, e.alpha, tol)
    else:
        per_norm = _rect_tail_bound(m, e.alpha)
    return CentralValueResult(value, m, per_norm * e.data_norm, e.data_norm)


def energy_tail(e: SteklovExpansion, quintile: float = 0.2) -> EnergyTail:
    """sum (1 + delta) c^2 over all terms (mean term included) plus the share
    contributed by the top-eigenvalue quintile, a cheap convergence read."""
    contributions = [e.mean_term**2]
    contributions += [(1.0 + t.mode.delta) * t.coefficient**2 for t in e.terms]
    total = float(sum(contributions))
    n_terms = len(e.terms)
    n_tail = math.ceil(quintile * n_terms)
    if n_tail == 0 or total == 0.0:
        return EnergyTail(total, 0.0)
    tail = float(sum(contributions[-n_tail:]))
    return EnergyTail(total, tail / total)


# ---------------------------------------------------------------------------
# JSON export/import. Floats serialize via repr, which round-trips exactly
# (17 significant digits suffice for any double).


def _term_dict(term: ExpansionTerm) -> dict:
    mode = term.mode
    if mode.kind == ModeKind.XY:
        cls, fam, idx = SymmetryClass.II.value, None, None
    else:
        cls, fam, idx = mode.symmetry_class.value, mode.family.value, mode.index
    return {
        "class": cls,
        "family": fam,
        "index": idx,
        "nu": mode.nu,
        "delta": mode.delta,
        "coefficient": term.coefficient,
    }


def expansion_to_dict(e: SteklovExpansion) -> dict:
    doc = {"alpha": e.alpha, "kind": e.kind}
    if e.t is not None:
        doc["t"] = e.t
    doc["mean_term"] = e.mean_term
    doc["terms"] = [_term_dict(t) for t in e.terms]
    doc["quadrature_order"] = e.quad_order
    return doc


def _mode_from_dict(d: dict, alpha: float) -> SteklovMode:
    cls = SymmetryClass(d["class"])
    if d["family"] is None:
        return resolve(ModeId.xy(), alpha)
    fam = Family(d["family"])
    # keep the stored nu/delta bit-exact; only the normalization is recomputed
    from .modes import log_normalization_integral
    from . import stable

    nu = float(d["nu"])
    log_total = log_normalization_integral(cls, fam, nu, alpha)
    log_norm_sq = log_total - math.log(4.0 * (1.0 + alpha))
    return SteklovMode(
        ModeId.separated(cls, fam, int(d["index"])),
        alpha,
        nu,
        float(d["delta"]),
        stable.exp_or_inf(log_norm_sq),
        stable.exp_or_inf(-0.5 * log_norm_sq),
        -0.5 * log_norm_sq,
    )


def expansion_from_dict(doc: dict) -> SteklovExpansion:
    alpha = float(doc["alpha"])
    terms = tuple(
        ExpansionTerm(_mode_from_dict(d, alpha), float(d["coefficient"])) for d in doc["terms"]
    )
    return SteklovExpansion(
        alpha,
        str(doc["kind"]),
        float(doc["t"]) if "t" in doc else None,
        float(doc["mean_term"]),
        terms,
        int(doc["quadrature_order"]),
        None,
    )


def save_expansion(e: SteklovExpansion, path) -> None:
    with open(path, "w") as fh:
        json.dump(expansion_to_dict(e), fh, indent=2)
        fh.write("\n")


def load_expansion(path) -> SteklovExpansion:
    with open(path) as fh:
        return expansion_from_dict(json.load(fh))
