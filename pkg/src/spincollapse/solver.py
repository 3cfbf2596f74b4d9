"""Post-measurement axis solver.

The admissible final axes form the level sets of the up-overlap probability at
the two values allowed by entropy conservation.  The final axis extremizes the
eigenbasis overlap on those curves, excluding the zero-entropy points (overlap
0 or 1).  Two independent routes are provided: a grid solver (marching-squares
tracing plus golden-section refinement along the curve) and a closed-form
solver working directly on the Bloch sphere.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .bloch import (
    Axis,
    SpinState,
    axis_to_bloch,
    bloch_to_axis_angles,
    canonicalize_axis,
    overlap_from_angles,
    state_to_bloch,
    up_overlap_prob,
)
from .contour import marching_squares
from .entropy import binary_entropy

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Status(enum.Enum):
    NORMAL = "Normal"
    DEATH_POINT = "DeathPoint"
    TRIVIAL = "Trivial"


@dataclass(frozen=True)
class SolverConfig:
    grid_n: int = 1024
    eps_trivial: float = 1e-9
    eps_z: float = 1e-6
    refine_tol: float = 1e-7
    method: str = "both"  # grid | closed_form | both
    identify_boundary: bool = False

    def __post_init__(self):
        if self.grid_n < 64:
            raise ValueError("grid_n must be >= 64")
        if min(self.eps_trivial, self.eps_z, self.refine_tol) <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.method not in ("grid", "closed_form", "both"):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass
class LevelSetCurve:
    level: float
    # vertex tuples (theta, phi, overlap, s_up); overlap/s_up are nan until
    # the initial axis is known
    vertices: list[tuple[float, float, float, float]]
    component_id: int
    touches_boundary: bool
    contains_zero_entropy: bool


@dataclass(frozen=True)
class Candidate:
    axis: Axis
    overlap: float
    s_up: float
    component_id: int
    is_boundary: bool


@dataclass
class CollapseSolution:
    status: Status
    axis_f: Axis
    s_up: float
    s_i: float
    candidates: list[Candidate] = field(default_factory=list)
    curves: list[LevelSetCurve] = field(default_factory=list)


class DegenerateGridError(RuntimeError):
    """The grid claims a level in the field's range has an empty level set."""


def constraint_levels(i: Axis, s: SpinState) -> tuple[float, float]:
    """The two admissible values of the final-axis overlap probability."""
    p_same = up_overlap_prob(i, s)
    return p_same, 1.0 - p_same


def _overlap_grid(s: SpinState, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    thetas = np.linspace(0.0, math.pi, n + 1)
    phis = np.linspace(0.0, math.pi, n + 1)
    rho, tau = s.rho, s.tau
    a = rho * np.cos(thetas / 2.0) ** 2 + (1.0 - rho) * np.sin(thetas / 2.0) ** 2
    b = math.sqrt(rho * (1.0 - rho)) * np.sin(thetas)
    p = a[:, None] + b[:, None] * np.cos(phis - tau)[None, :]
    return thetas, phis, p


def _axes_overlap_at(theta: float, phi: float, ni: tuple[float, float, float]) -> float:
    st = math.sin(theta)
    dot = st * math.cos(phi) * ni[0] + st * math.sin(phi) * ni[1] + math.cos(theta) * ni[2]
    return min(1.0, max(0.0, 0.5 * (1.0 + dot)))


def trace_level_sets(s: SpinState, levels: tuple[float, ...], cfg: SolverConfig,
                     axis_i: Axis | None = None) -> list[LevelSetCurve]:
    """Extract the chart-restricted level curves of the up-overlap field.

    An empty result for a level is allowed: the level may be unattained on the
    chart.  When axis_i is given, vertices carry the eigenbasis overlap and
    its entropy.
    """
    thetas, phis, p = _overlap_grid(s, cfg.grid_n)
    ni = axis_to_bloch(axis_i) if axis_i is not None else None
    edge = 1e-12
    curves: list[LevelSetCurve] = []
    cid = 0
    for level in levels:
        if not 0.0 < level < 1.0:
            raise ValueError(f"level must be in (0,1): {level}")
        polys = marching_squares(p - level, thetas, phis)
        if not polys and p.min() + 1e-9 < level < p.max() - 1e-9:
            raise DegenerateGridError(
                f"level {level} lies in the field range "
                f"[{p.min()}, {p.max()}] but no contour was found")
        for poly in polys:
            verts = []
            zero = False
            touches = False
            for th, ph in poly:
                if ni is not None:
                    q = _axes_overlap_at(th, ph, ni)
                    su = binary_entropy(q)
                    zero = zero or su <= cfg.eps_z
                else:
                    q = su = float("nan")
                if (th < edge or th > math.pi - edge
                        or ph < edge or ph > math.pi - edge):
                    touches = True
                verts.append((float(th), float(ph), q, su))
            curves.append(LevelSetCurve(level, verts, cid, touches, zero))
            cid += 1
    return curves


def _grad_overlap(theta: float, phi: float, s: SpinState) -> tuple[float, float]:
    r = math.sqrt(s.rho * (1.0 - s.rho))
    dth = 0.5 * (1.0 - 2.0 * s.rho) * math.sin(theta) \
        + r * math.cos(theta) * math.cos(phi - s.tau)
    dph = -r * math.sin(theta) * math.sin(phi - s.tau)
    return dth, dph


def _project_to_level(theta: float, phi: float, s: SpinState, level: float,
                      h: float) -> tuple[float, float]:
    """Move transverse to the curve (along the field gradient) onto the exact
    level set.  Returns the input point if no bracketing root is found."""
    gth, gph = _grad_overlap(theta, phi, s)
    norm = math.hypot(gth, gph)
    if norm < 1e-14:
        return theta, phi

    def res(t: float) -> float:
        return overlap_from_angles(theta + t * gth / norm,
                                   phi + t * gph / norm, s.rho, s.tau) - level

    lo, hi = -h, h
    for _ in range(6):
        if res(lo) * res(hi) <= 0.0:
            break
        lo *= 2.0
        hi *= 2.0
    else:
        return theta, phi
    t = brentq(res, lo, hi, xtol=1e-14)
    return theta + t * gth / norm, phi + t * gph / norm


def _grad_axes_overlap(theta: float, phi: float, ni: tuple[float, float, float]
                       ) -> tuple[float, float]:
    ct, st = math.cos(theta), math.sin(theta)
    cp, sp = math.cos(phi), math.sin(phi)
    dth = 0.5 * (ct * cp * ni[0] + ct * sp * ni[1] - st * ni[2])
    dph = 0.5 * (-st * sp * ni[0] + st * cp * ni[1])
    return dth, dph


def _tangency(theta: float, phi: float, s: SpinState,
              ni: tuple[float, float, float]) -> float:
    """Cross product of the overlap and constraint gradients; zero exactly at
    an extremum of the overlap along the level curve."""
    gth, gph = _grad_overlap(theta, phi, s)
    hth, hph = _grad_axes_overlap(theta, phi, ni)
    return hth * gph - hph * gth


def _refine_between(p0: tuple[float, float], p1: tuple[float, float],
                    s: SpinState, level: float,
                    ni: tuple[float, float, float], cfg: SolverConfig
                    ) -> tuple[float, float, float]:
    """Locate the overlap extremum on the curve between two polyline vertices.

    Golden-section search over the re-projected chord narrows the bracket,
    then the tangency root is polished by Brent's method; the overlap can be
    extremely flat in chart coordinates (near a pole), where only the tangency
    condition pins the position.
    """
    total = math.hypot(p1[0] - p0[0], p1[1] - p0[1])
    h = max(total, 1e-6)

    def point_at(t: float) -> tuple[float, float]:
        u = t / total if total > 0 else 0.0
        raw = (p0[0] + u * (p1[0] - p0[0]), p0[1] + u * (p1[1] - p0[1]))
        return _project_to_level(raw[0], raw[1], s, level, h)

    def tang(t: float) -> float:
        th, ph = point_at(t)
        return _tangency(th, ph, s, ni)

    ta, tb = tang(0.0), tang(total)
    sign = -1.0 if ta > 0.0 else 1.0  # overlap rises toward the extremum

    def objective(t: float) -> float:
        th, ph = point_at(t)
        return sign * _axes_overlap_at(th, ph, ni)

    a, b = 0.0, total
    if ta * tb < 0.0:
        c = b - INV_PHI * (b - a)
        d = a + INV_PHI * (b - a)
        fc, fd = objective(c), objective(d)
        while b - a > cfg.refine_tol:
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - INV_PHI * (b - a)
                fc = objective(c)
            else:
                a, c, fc = c, d, fd
                d = a + INV_PHI * (b - a)
                fd = objective(d)
        # the tangency sign change survives inside [a, b] only when the
        # narrowed bracket still straddles the root; polish on the widest
        # bracket that does
        lo, hi = a, b
        if tang(lo) * tang(hi) > 0.0:
            lo, hi = 0.0, total
        t_best = brentq(tang, lo, hi, xtol=1e-13)
    else:
        t_best = 0.0 if abs(ta) <= abs(tb) else total
    th, ph = point_at(t_best)
    return th, ph, _axes_overlap_at(th, ph, ni)


def _curve_candidates(curve: LevelSetCurve, s: SpinState, i: Axis,
                      cfg: SolverConfig) -> tuple[list[Candidate], bool]:
    """Refined interior extrema of the eigenbasis overlap along one curve plus
    its boundary endpoints.  Returns (candidates, has_zero_entropy).

    Interior extrema are detected as sign changes of the tangency condition
    between consecutive vertices; vertex overlap values alone are too noisy to
    bracket an extremum where the overlap is flat along the curve.
    """
    ni = axis_to_bloch(i)
    raw = [(v[0], v[1]) for v in curve.vertices]
    closed = len(raw) > 2 and raw[0] == raw[-1]
    if closed:
        raw = raw[:-1]
    # drop consecutive duplicates (crossings collapsing onto a grid node)
    pts = [raw[0]]
    for p in raw[1:]:
        if math.hypot(p[0] - pts[-1][0], p[1] - pts[-1][1]) > 1e-12:
            pts.append(p)
    n = len(pts)
    cands: list[Candidate] = []
    zero = curve.contains_zero_entropy

    tangs = [_tangency(th, ph, s, ni) for th, ph in pts]
    found: list[tuple[float, float, float]] = []
    segs = range(n) if closed else range(n - 1)
    for k in segs:
        kp = (k + 1) % n
        if tangs[k] * tangs[kp] < 0.0 or (tangs[k] == 0.0 and tangs[kp] != 0.0):
            found.append(_refine_between(pts[k], pts[kp], s, curve.level,
                                         ni, cfg))
    # adjacent segments can both straddle the same root through vertex noise
    uniq: list[tuple[float, float, float]] = []
    for th, ph, q in found:
        if all(math.hypot(th - a, ph - b) > 10 * cfg.refine_tol
               for a, b, _ in uniq):
            uniq.append((th, ph, q))
    for th, ph, q in uniq:
        su = binary_entropy(q)
        if su <= cfg.eps_z:
            zero = True
        cands.append(Candidate(canonicalize_axis(th, ph), q, su,
                               curve.component_id, False))
    if not closed:
        for k in ((0,) if n == 1 else (0, n - 1)):
            th, ph = pts[k]
            q = _axes_overlap_at(th, ph, ni)
            cands.append(Candidate(canonicalize_axis(th, ph), q,
                                   binary_entropy(q), curve.component_id, True))
    return cands, zero


def solve_collapse(i: Axis, s: SpinState, cfg: SolverConfig | None = None
                   ) -> CollapseSolution:
    """Grid route: trace both admissible level sets, drop components carrying
    a zero-entropy point, and return the overlap extremum with minimal
    eigenbasis entropy.

    Interior extrema are preferred; interior extrema on dropped components
    (the chart representative of an extremum whose raw direction falls outside
    the chart) are used when the kept components have none; boundary endpoints
    are a last resort.  If no component survives the drop, the configuration
    is a death point and the axis cannot move.
    """
    cfg = cfg or SolverConfig()
    p_same, p_flip = constraint_levels(i, s)
    s_i = binary_entropy(p_same)
    if min(p_same, p_flip) <= cfg.eps_trivial:
        return CollapseSolution(Status.TRIVIAL, i, 0.0, s_i)

    curves = trace_level_sets(s, (p_same, p_flip), cfg, axis_i=i)
    all_cands: list[Candidate] = []
    zero_ids: set[int] = set()
    for curve in curves:
        cands, zero = _curve_candidates(curve, s, i, cfg)
        curve.contains_zero_entropy = zero
        if zero:
            zero_ids.add(curve.component_id)
        all_cands.extend(cands)

    retained_ids = {c.component_id for c in curves} - zero_ids
    if not retained_ids:
        return CollapseSolution(Status.DEATH_POINT, i, 0.0, s_i,
                                all_cands, curves)

    def admissible(c: Candidate) -> bool:
        return c.s_up > cfg.eps_z

    tiers = (
        [c for c in all_cands if not c.is_boundary
         and c.component_id in retained_ids and admissible(c)],
        [c for c in all_cands if not c.is_boundary
         and c.component_id in zero_ids and admissible(c)],
        [c for c in all_cands if c.is_boundary
         and c.component_id in retained_ids and admissible(c)],
    )
    chosen = None
    for tier in tiers:
        if tier:
            chosen = min(tier, key=lambda c: (c.s_up, c.axis.theta, c.axis.phi))
            break
    if chosen is None:
        raise DegenerateGridError("no admissible extremum on any component")
    return CollapseSolution(Status.NORMAL, chosen.axis, chosen.s_up, s_i,
                            all_cands, curves)


def solve_collapse_closed_form(i: Axis, s: SpinState,
                               cfg: SolverConfig | None = None
                               ) -> CollapseSolution:
    """Closed-form route on the Bloch sphere.

    With m the state vector, n_i the axis and c = n_i . m, the retained
    constraint circle is {n : n . m = -c}; the overlap-maximizing direction on
    it is the reflection n* = n_i - 2 c m, with eigenbasis overlap 1 - c^2.
    The configuration is a death point when that circle has no chart
    representative, i.e. when its maximal y-component is negative.
    """
    cfg = cfg or SolverConfig()
    m = state_to_bloch(s)
    ni = axis_to_bloch(i)
    c = ni[0] * m[0] + ni[1] * m[1] + ni[2] * m[2]
    s_i = binary_entropy(min(1.0, max(0.0, 0.5 * (1.0 + c))))
    if abs(c) >= 1.0 - cfg.eps_trivial:
        return CollapseSolution(Status.TRIVIAL, i, 0.0, s_i)

    root = math.sqrt(max(0.0, 1.0 - c * c))
    flip_max_y = -c * m[1] + root * math.sqrt(max(0.0, 1.0 - m[1] * m[1]))
    s_up = binary_entropy(min(1.0, max(0.0, c * c)))
    if flip_max_y < 0.0:
        return CollapseSolution(Status.DEATH_POINT, i, 0.0, s_i)

    nstar = (ni[0] - 2.0 * c * m[0],
             ni[1] - 2.0 * c * m[1],
             ni[2] - 2.0 * c * m[2])
    nrm = math.sqrt(nstar[0] ** 2 + nstar[1] ** 2 + nstar[2] ** 2)
    nstar = (nstar[0] / nrm, nstar[1] / nrm, nstar[2] / nrm)
    theta, phi = bloch_to_axis_angles(nstar)
    axis_f = canonicalize_axis(theta, phi)
    overlap = 1.0 - c * c
    cand = Candidate(axis_f, overlap, s_up, 0, False)
    return CollapseSolution(Status.NORMAL, axis_f, s_up, s_i, [cand], [])
