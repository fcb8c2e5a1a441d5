"""Resolved Steklov modes on a rectangle: eigenvalues, normalization, evaluation.

A separated eigenfunction is a product of one hyperbolic and one trig factor,
s(x,y) = F(nu x) G(nu y) or G(nu x) F(nu y), picked by symmetry class (parity
pattern) and family (which variable is hyperbolic). On top of those sit the
constant mode and, on the square, the degenerate mode x*y. Every mode is
returned boundary-normalized: the mean square of its trace over the boundary
equals 1.
"""

from __future__ import annotations

import enum
import heapq
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geometry import BoundaryPoint, CornerError, Edge, Rectangle, check_interior
from .roots import DEFAULT_TOL, DeterminingEquation, Family, SymmetryClass, solve_nu
from . import stable

__all__ = [
    "ModeKind",
    "ModeId",
    "SteklovMode",
    "InvalidModeError",
    "eigenvalue",
    "normalization_integral",
    "log_normalization_integral",
    "resolve",
    "evaluate",
    "boundary_trace",
    "trace_on_edge",
    "normal_derivative",
    "spectrum",
    "first_modes",
    "mode_streams",
]

_CLASS_ORDER = {SymmetryClass.I: 0, SymmetryClass.II: 1, SymmetryClass.III: 2, SymmetryClass.IV: 3}
_FAMILY_ORDER = {Family.X: 0, Family.Y: 1}


class InvalidModeError(ValueError):
    """Mode identity inconsistent with the rectangle (e.g. xy with alpha != 1)."""


class ModeKind(enum.Enum):
    CONSTANT = "constant"
    XY = "xy"
    SEPARATED = "separated"


@dataclass(frozen=True)
class ModeId:
    """Identity of a mode: constant, the square's xy mode, or (class, family, j)."""

    kind: ModeKind
    symmetry_class: Optional[SymmetryClass] = None
    family: Optional[Family] = None
    index: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind == ModeKind.SEPARATED:
            if self.symmetry_class is None or self.family is None or self.index is None:
                raise InvalidModeError("separated modes need class, family and index")
            if self.index < 1:
                raise InvalidModeError(f"mode index must be >= 1, got {self.index}")
        else:
            if self.symmetry_class is not None or self.family is not None or self.index is not None:
                raise InvalidModeError(f"{self.kind.value} mode carries no class/family/index")

    @classmethod
    def constant(cls) -> "ModeId":
        return cls(ModeKind.CONSTANT)

    @classmethod
    def xy(cls) -> "ModeId":
        return cls(ModeKind.XY)

    @classmethod
    def separated(cls, symmetry_class: SymmetryClass, family: Family, index: int) -> "ModeId":
        return cls(ModeKind.SEPARATED, symmetry_class, family, index)

    def sort_key(self) -> tuple:
        """Tie-break for equal eigenvalues: constant, xy, then class/family/index."""
        if self.kind == ModeKind.CONSTANT:
            return (-1, -1, 0)
        if self.kind == ModeKind.XY:
            return (_CLASS_ORDER[SymmetryClass.II], -1, 0)
        return (_CLASS_ORDER[self.symmetry_class], _FAMILY_ORDER[self.family], self.index)


@dataclass(frozen=True)
class SteklovMode:
    """A fully resolved, boundary-normalized mode.

    norm_sq is the boundary mean square of the *unnormalized* profile and
    scale = 1/sqrt(norm_sq) the normalization multiplier. Both can leave the
    double range for very large nu; log_scale is the authoritative quantity
    and all evaluation goes through it.
    """

    mode_id: ModeId
    alpha: float
    nu: float
    delta: float
    norm_sq: float
    scale: float
    log_scale: float

    @property
    def rect(self) -> Rectangle:
        return Rectangle(self.alpha)

    @property
    def kind(self) -> ModeKind:
        return self.mode_id.kind

    @property
    def symmetry_class(self) -> Optional[SymmetryClass]:
        return self.mode_id.symmetry_class

    @property
    def family(self) -> Optional[Family]:
        return self.mode_id.family

    @property
    def index(self) -> Optional[int]:
        return self.mode_id.index

    def sort_key(self) -> tuple:
        return (self.delta,) + self.mode_id.sort_key()


def eigenvalue(
    symmetry_class: SymmetryClass, family: Family, nu: float, alpha: float
) -> float:
    """Steklov eigenvalue delta = (normal derivative)/(trace) of the profile.

    The ratio is nu * tanh or nu * coth of the hyperbolic argument at its
    edge (tanh for a cosh factor, coth for sinh); the determining equation
    makes the other edge pair agree, which the tests verify independently.
    """
    if nu <= 0.0:
        raise ValueError(f"nu must be positive, got {nu}")
    hyp_even = symmetry_class.even_x if family == Family.X else symmetry_class.even_y
    arg = nu if family == Family.X else alpha * nu
    if hyp_even:
        return nu * math.tanh(arg)
    return nu / math.tanh(arg)


def _profile_parts(symmetry_class: SymmetryClass, family: Family):
    """(hyp_is_cosh, trig_is_cos): factor kinds for the hyperbolic/trig variables."""
    if family == Family.X:
        return symmetry_class.even_x, symmetry_class.even_y
    return symmetry_class.even_y, symmetry_class.even_x


def log_normalization_integral(
    symmetry_class: SymmetryClass, family: Family, nu: float, alpha: float
) -> float:
    """log of the boundary integral of the squared unnormalized profile.

    Each of the four edge integrals is an elementary mean-square of a single
    trig/hyperbolic factor times the squared complementary factor at the
    fixed coordinate; everything is evaluated scaled by exp(-2*nu*L_hyp) so
    arbitrarily large nu stays finite.
    """
    if nu <= 0.0:
        raise ValueError(f"nu must be positive, got {nu}")
    hyp_cosh, trig_cos = _profile_parts(symmetry_class, family)
    hyp_sq = stable.cosh_sq_scaled if hyp_cosh else stable.sinh_sq_scaled
    hyp_mean = stable.mean_sq_cosh_scaled if hyp_cosh else stable.mean_sq_sinh_scaled
    trig = math.cos if trig_cos else math.sin
    trig_mean = stable.mean_sq_cos if trig_cos else stable.mean_sq_sin

    if family == Family.X:
        # hyperbolic along x on (-1,1), trig along y on (-alpha,alpha)
        u_hyp, l_hyp = nu, 1.0
        u_trig, l_trig = nu * alpha, alpha
    else:
        u_hyp, l_hyp = nu * alpha, alpha
        u_trig, l_trig = nu, 1.0
    # 2 * [ F(u_hyp)^2 * int G^2  +  G(u_trig)^2 * int F^2 ], scaled by e^{-2 u_hyp}
    scaled = 2.0 * (
        hyp_sq(u_hyp) * l_trig * trig_mean(u_trig)
        + trig(u_trig) ** 2 * l_hyp * hyp_mean(u_hyp)
    )
    return 2.0 * u_hyp + math.log(scaled)


def normalization_integral(
    symmetry_class: SymmetryClass,
    family: Family,
    nu: float,
    alpha: float,
    scaled: bool = True,
) -> float:
    """Boundary integral of the squared unnormalized profile.

    With scaled=False the hyperbolic factors are evaluated directly, which
    overflows past nu ~ 350; an OverflowError there signals misconfiguration
    rather than silently returning inf.
    """
    logv = log_normalization_integral(symmetry_class, family, nu, alpha)
    if not scaled and logv > 709.0:
        raise OverflowError(
            f"normalization integral overflows doubles at nu={nu}; "
            "use the log-scaled path"
        )
    return stable.exp_or_inf(logv)


def resolve(mode_id: ModeId, alpha: float, tol: float = DEFAULT_TOL) -> SteklovMode:
    """Fully populate a mode: root, eigenvalue, normalization. Deterministic."""
    rect = Rectangle(alpha)  # validates alpha
    if mode_id.kind == ModeKind.CONSTANT:
        return SteklovMode(mode_id, alpha, 0.0, 0.0, 1.0, 1.0, 0.0)
    if mode_id.kind == ModeKind.XY:
        if alpha != 1.0:
            raise InvalidModeError(f"the xy mode exists only on the square, got alpha={alpha}")
        # mean square of x*y over the boundary is 1/3
        return SteklovMode(mode_id, alpha, 0.0, 1.0, 1.0 / 3.0, math.sqrt(3.0), 0.5 * math.log(3.0))
    eq = DeterminingEquation(mode_id.symmetry_class, mode_id.family, alpha)
    nu = solve_nu(eq, mode_id.index, tol)
    delta = eigenvalue(mode_id.symmetry_class, mode_id.family, nu, alpha)
    log_total = log_normalization_integral(mode_id.symmetry_class, mode_id.family, nu, alpha)
    log_norm_sq = log_total - math.log(rect.perimeter)
    return SteklovMode(
        mode_id,
        alpha,
        nu,
        delta,
        stable.exp_or_inf(log_norm_sq),
        stable.exp_or_inf(-0.5 * log_norm_sq),
        -0.5 * log_norm_sq,
    )


def _separated_factors(mode: SteklovMode, x, y, d_hyp: bool = False, d_trig: bool = False):
    """Normalized profile (or a first derivative factor) for separated modes.

    d_hyp differentiates the hyperbolic factor, d_trig the trig one; the nu
    prefactor of the derivative is left to the caller.
    """
    cls, fam = mode.symmetry_class, mode.family
    hyp_cosh, trig_cos = _profile_parts(cls, fam)
    u = x if fam == Family.X else y  # hyperbolic variable
    v = y if fam == Family.X else x  # trig variable
    uh = mode.nu * np.asarray(u, dtype=float)
    vt = mode.nu * np.asarray(v, dtype=float)

    use_cosh = hyp_cosh ^ d_hyp  # derivative swaps cosh <-> sinh
    if use_cosh:
        hyp_part = stable.signed_exp_cosh(uh, mode.log_scale)
    else:
        hyp_part = stable.signed_exp_sinh(uh, mode.log_scale)

    use_cos = trig_cos ^ d_trig
    trig_part = np.cos(vt) if use_cos else np.sin(vt)
    if d_trig and trig_cos:  # d/dv cos = -sin
        trig_part = -trig_part
    return hyp_part * trig_part


def evaluate(mode: SteklovMode, x, y):
    """Boundary-normalized eigenfunction value(s) on the closed rectangle."""
    rect = mode.rect
    check_interior(rect, x, y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if mode.kind == ModeKind.CONSTANT:
        out = np.ones(np.broadcast(x, y).shape)
        return float(out) if out.ndim == 0 else out
    if mode.kind == ModeKind.XY:
        out = mode.scale * x * y
        return float(out) if out.ndim == 0 else out
    out = _separated_factors(mode, x, y)
    return float(out) if out.ndim == 0 else out


def trace_on_edge(mode: SteklovMode, edge: Edge, t):
    """Trace along one edge as a function of the edge coordinate."""
    x, y = mode.rect.edge_xy(edge, t)
    return evaluate(mode, x, y)


def boundary_trace(mode: SteklovMode, point: BoundaryPoint) -> float:
    """Trace at a boundary point; equals evaluate at its coordinates."""
    return float(evaluate(mode, point.x, point.y))


def gradient(mode: SteklovMode, x, y):
    """(d/dx, d/dy) of the normalized eigenfunction."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if mode.kind == ModeKind.CONSTANT:
        z = np.zeros(np.broadcast(x, y).shape)
        return z, z.copy()
    if mode.kind == ModeKind.XY:
        return mode.scale * y, mode.scale * x
    if mode.family == Family.X:
        dx = mode.nu * _separated_factors(mode, x, y, d_hyp=True)
        dy = mode.nu * _separated_factors(mode, x, y, d_trig=True)
    else:
        dx = mode.nu * _separated_factors(mode, x, y, d_trig=True)
        dy = mode.nu * _separated_factors(mode, x, y, d_hyp=True)
    return dx, dy


_OUTWARD = {Edge.RIGHT: (1.0, 0.0), Edge.TOP: (0.0, 1.0), Edge.LEFT: (-1.0, 0.0), Edge.BOTTOM: (0.0, -1.0)}


def normal_derivative(mode: SteklovMode, point: BoundaryPoint) -> float:
    """Outward normal derivative at a non-corner boundary point.

    Computed from the analytic gradient, so the Steklov identity
    normal_derivative = delta * trace is a genuine check, not a definition.
    """
    rect = mode.rect
    if rect.is_corner(point.edge, point.t):
        raise CornerError(f"normal undefined at corner of {rect}: t={point.t} on {point.edge.name}")
    nx, ny = _OUTWARD[point.edge]
    dx, dy = gradient(mode, point.x, point.y)
    return float(nx * dx + ny * dy)


def _env_threads() -> int:
    raw = os.environ.get("STEKLOV_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def mode_streams(
    alpha: float,
    classes: Optional[Sequence[SymmetryClass]] = None,
    families: Optional[Sequence[Family]] = None,
) -> list[tuple[SymmetryClass, Family]]:
    """The (class, family) sequences present for this filter, in tie-break order."""
    classes = list(SymmetryClass) if classes is None else list(classes)
    families = list(Family) if families is None else list(families)
    return [(c, f) for c in SymmetryClass if c in classes for f in Family if f in families]


def first_modes(
    alpha: float,
    count: int,
    classes: Optional[Sequence[SymmetryClass]] = None,
    families: Optional[Sequence[Family]] = None,
    tol: float = DEFAULT_TOL,
) -> list[SteklovMode]:
    """The first `count` non-constant modes in ascending-eigenvalue order.

    Merges the per-(class, family) sequences lazily; each sequence is strictly
    increasing in delta, so a heap of one candidate per sequence suffices.
    Ties (the square is full of them) break by class then family order.
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    heap: list[tuple] = []
    for cls, fam in mode_streams(alpha, classes, families):
        mode = resolve(ModeId.separated(cls, fam, 1), alpha, tol)
        heapq.heappush(heap, (mode.sort_key(), mode))
    if alpha == 1.0 and (classes is None or SymmetryClass.II in classes):
        mode = resolve(ModeId.xy(), alpha, tol)
        heapq.heappush(heap, (mode.sort_key(), mode))
    out: list[SteklovMode] = []
    while heap and len(out) < count:
        _, mode = heapq.heappop(heap)
        out.append(mode)
        if mode.kind == ModeKind.SEPARATED:
            nxt = resolve(
                ModeId.separated(mode.symmetry_class, mode.family, mode.index + 1), alpha, tol
            )
            heapq.heappush(heap, (nxt.sort_key(), nxt))
    if len(out) < count:
        raise InvalidModeError(f"filter yields only {len(out)} modes, {count} requested")
    return out


def spectrum(
    alpha: float,
    j_max: int,
    classes: Optional[Sequence[SymmetryClass]] = None,
    families: Optional[Sequence[Family]] = None,
    tol: float = DEFAULT_TOL,
    include_constant: bool = True,
    threads: Optional[int] = None,
) -> list[SteklovMode]:
    """All modes with per-sequence index <= j_max, sorted by eigenvalue.

    Includes the constant mode (unless suppressed or filtered out of class I)
    and the xy mode on the square when class II passes the filter. threads
    defaults to the STEKLOV_THREADS environment variable and caps the worker
    pool used to resolve independent modes.
    """
    if j_max < 0:
        raise ValueError(f"j_max must be >= 0, got {j_max}")
    ids: list[ModeId] = []
    allowed = list(SymmetryClass) if classes is None else list(classes)
    if include_constant and SymmetryClass.I in allowed:
        ids.append(ModeId.constant())
    if alpha == 1.0 and SymmetryClass.II in allowed:
        ids.append(ModeId.xy())
    for cls, fam in mode_streams(alpha, classes, families):
        ids.extend(ModeId.separated(cls, fam, j) for j in range(1, j_max + 1))

    workers = _env_threads() if threads is None else max(1, threads)
    if workers > 1 and len(ids) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            modes = list(pool.map(lambda mid: resolve(mid, alpha, tol), ids))
    else:
        modes = [resolve(mid, alpha, tol) for mid in ids]
    return sorted(modes, key=SteklovMode.sort_key)
