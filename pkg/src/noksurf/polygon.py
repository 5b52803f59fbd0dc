"""Newton-Okounkov polygon assembly, vertex classification, and invariants.

The polygon of a big class with respect to a flag (C, p) is the region
nu <= t <= mu, alpha(t) <= s <= beta(t), where alpha collects the local
contribution of the moving negative part at p and beta adds the pairing of
the moving positive part with C.  Both are piecewise affine with breakpoints
at the walk's wall times, so the region is a polygon whose vertex abscissas
all lie among nu, the wall times, and mu.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from . import linalg
from .errors import InputError, InternalError, ModelError, TheoremViolation
from .lattice import (
    SurfaceModel,
    as_divisor,
    dual_graph_components,
    is_model_ample,
    is_negative_definite,
    pair,
)
from .qext import QExt, as_exact
from .raywalk import RayProfile, resolve_flag, segment_positive_part
from .zariski import zariski_decompose


@dataclass(frozen=True)
class FlagSpec:
    """Flag data: the curve C (label or class) and the local intersection
    multiplicities (C_j . C)_p of the declared curves at the flag point."""

    flag: object
    local_mult: dict[str, int]

    def resolved(self, model: SurfaceModel):
        return resolve_flag(model, self.flag)

    def validate(self, model: SurfaceModel) -> None:
        label, cls = self.resolved(model)
        for l, m in self.local_mult.items():
            if l == label:
                raise InputError("local multiplicities must not include the flag curve")
            rec_cls = model.class_of(l)
            if not isinstance(m, int) or isinstance(m, bool) or m < 0:
                raise InputError(f"local multiplicity of {l!r} must be a nonnegative integer")
            total = pair(model, rec_cls, cls)
            if m > total:
                raise InputError(
                    f"local multiplicity of {l!r} exceeds its total intersection {total}"
                )

    def mult(self, label: str) -> int:
        return self.local_mult.get(label, 0)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise affine function given by breakpoint/value pairs."""

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "breakpoints", tuple(as_exact(x) for x in self.breakpoints)
        )
        object.__setattr__(self, "values", tuple(as_exact(x) for x in self.values))
        if len(self.breakpoints) != len(self.values) or len(self.breakpoints) < 2:
            raise InputError("need matching breakpoints and values, at least two")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise InputError("breakpoints must be strictly increasing")

    def slopes(self) -> tuple:
        out = []
        for (x0, x1), (y0, y1) in zip(
            zip(self.breakpoints, self.breakpoints[1:]),
            zip(self.values, self.values[1:]),
        ):
            out.append(as_exact((y1 - y0) / (x1 - x0)))
        return tuple(out)

    def value_at(self, t):
        if t < self.breakpoints[0] or t > self.breakpoints[-1]:
            raise InputError("argument outside the function's domain")
        for i in range(len(self.breakpoints) - 1):
            if t <= self.breakpoints[i + 1]:
                x0, x1 = self.breakpoints[i], self.breakpoints[i + 1]
                y0, y1 = self.values[i], self.values[i + 1]
                return as_exact(y0 + (y1 - y0) * (t - x0) / (x1 - x0))
        raise InternalError("unreachable")

    def integral(self):
        """Exact integral over the whole domain (trapezoid per piece)."""
        total = Fraction(0)
        for (x0, x1), (y0, y1) in zip(
            zip(self.breakpoints, self.breakpoints[1:]),
            zip(self.values, self.values[1:]),
        ):
            total = total + (y0 + y1) * (x1 - x0) / 2
        return as_exact(total)

    def is_convex(self) -> bool:
        s = self.slopes()
        return all(a <= b for a, b in zip(s, s[1:]))

    def is_concave(self) -> bool:
        s = self.slopes()
        return all(a >= b for a, b in zip(s, s[1:]))

    def is_nondecreasing(self) -> bool:
        return all(s >= 0 for s in self.slopes())


def alpha_beta(model: SurfaceModel, profile: RayProfile, flag: FlagSpec):
    """Boundary functions of the polygon: alpha below, beta above.

    alpha(t) sums a_j(t) * (C_j.C)_p over the moving support; beta(t) is
    alpha(t) + P_t.C.  The equivalent expansion
    beta(t) = D.C - t C^2 - (N_t.C - alpha(t)) is an identity of the same
    data and is exercised by the test suite as a consistency check.
    """
    flag.validate(model)
    label, cls = flag.resolved(model)
    if label != profile.flag_label or cls != profile.flag_class:
        raise InputError("flag does not match the one the profile was walked with")
    for seg in profile.segments:
        if label is not None and label in seg.support:
            raise ModelError("flag curve appears in the moving support")

    breakpoints = [profile.segments[0].t_lo]
    alpha_vals = []
    beta_vals = []
    prev_alpha = prev_beta = None
    for seg in profile.segments:
        a0 = sum((seg.coeffs[l][0] * flag.mult(l) for l in seg.support), Fraction(0))
        a1 = sum((seg.coeffs[l][1] * flag.mult(l) for l in seg.support), Fraction(0))
        p0, p1 = segment_positive_part(model, profile, seg)
        b0 = a0 + pair(model, p0, cls)
        b1 = a1 + pair(model, p1, cls)
        lo, hi = seg.t_lo, seg.t_hi
        alo, ahi = a0 + a1 * lo, as_exact(a0 + a1 * hi)
        blo, bhi = b0 + b1 * lo, as_exact(b0 + b1 * hi)
        if prev_alpha is not None and (prev_alpha != alo or prev_beta != blo):
            raise InternalError("boundary functions are discontinuous at a wall")
        if prev_alpha is None:
            alpha_vals.append(alo)
            beta_vals.append(blo)
        breakpoints.append(hi)
        alpha_vals.append(ahi)
        beta_vals.append(bhi)
        prev_alpha, prev_beta = ahi, bhi

    alpha = PiecewiseLinear(tuple(breakpoints), tuple(alpha_vals))
    beta = PiecewiseLinear(tuple(breakpoints), tuple(beta_vals))
    if not (alpha.is_convex() and alpha.is_nondecreasing()):
        raise ModelError("lower boundary is not convex nondecreasing; inconsistent model data")
    if not beta.is_concave():
        raise ModelError("upper boundary is not concave; inconsistent model data")
    return alpha, beta


# -- polygon ----------------------------------------------------------------


@dataclass(frozen=True)
class OkPolygon:
    """Counterclockwise vertex cycle with boundary provenance per vertex."""

    vertices: tuple  # of (t, s) pairs, exact coordinates
    on_lower: tuple
    on_upper: tuple
    tags: tuple | None = None

    def __len__(self):
        return len(self.vertices)

    def vertex_count(self) -> int:
        return len(self.vertices)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _collapse_chain(points):
    """Drop repeated and collinear interior points of an open chain."""
    out = []
    for p in points:
        out.append(p)
        while len(out) >= 2 and out[-1] == out[-2]:
            out.pop()
        while len(out) >= 3 and _cross(out[-3], out[-2], out[-1]) == 0:
            out.pop(-2)
    return out


def build_polygon(alpha: PiecewiseLinear, beta: PiecewiseLinear) -> OkPolygon:
    """Assemble the region between alpha and beta into a convex ccw polygon.

    Vertices run left to right along alpha, then right to left along beta;
    collinear points are removed and zero-length sides collapsed.
    """
    bps = sorted(set(alpha.breakpoints) | set(beta.breakpoints))
    avals = [alpha.value_at(t) for t in bps]
    bvals = [beta.value_at(t) for t in bps]
    for t, a, b in zip(bps, avals, bvals):
        if a > b:
            raise InternalError(f"lower boundary exceeds upper boundary at t = {t}")

    lower = _collapse_chain(list(zip(bps, avals)))
    upper = _collapse_chain(list(zip(reversed(bps), reversed(bvals))))

    pts: list = []
    flags: list[list[bool]] = []  # [on_lower, on_upper]

    def push(p, low, up):
        if pts and pts[-1] == p:
            flags[-1][0] |= low
            flags[-1][1] |= up
            return
        pts.append(p)
        flags.append([low, up])

    for p in lower:
        push(p, True, False)
    for p in upper:
        push(p, False, True)
    if len(pts) > 1 and pts[0] == pts[-1]:
        flags[0][0] |= flags[-1][0]
        flags[0][1] |= flags[-1][1]
        pts.pop()
        flags.pop()

    # cyclic collinearity cleanup (seams included)
    changed = True
    while changed and len(pts) > 2:
        changed = False
        for i in range(len(pts)):
            o = pts[(i - 1) % len(pts)]
            a = pts[i]
            b = pts[(i + 1) % len(pts)]
            if _cross(o, a, b) == 0:
                pts.pop(i)
                flags.pop(i)
                changed = True
                break

    if len(pts) < 3:
        raise InternalError("polygon degenerated to fewer than three vertices")
    for i in range(len(pts)):
        if _cross(pts[i - 1], pts[i], pts[(i + 1) % len(pts)]) <= 0:
            raise InternalError("polygon is not strictly convex counterclockwise")

    return OkPolygon(
        vertices=tuple(pts),
        on_lower=tuple(f[0] for f in flags),
        on_upper=tuple(f[1] for f in flags),
    )


def polygon_area2(polygon: OkPolygon):
    """Twice the area by the shoelace sum, exact."""
    total = Fraction(0)
    vs = polygon.vertices
    for (x0, y0), (x1, y1) in zip(vs, vs[1:] + vs[:1]):
        total = total + (x0 * y1 - x1 * y0)
    total = as_exact(total)
    if isinstance(total, QExt):
        raise InternalError("polygon area came out irrational")
    return total


def classify_vertices(polygon: OkPolygon, profile: RayProfile) -> OkPolygon:
    """Tag each vertex {leftmost|interior|rightmost}-{lower|upper|degenerate}."""
    t_lo, t_hi = profile.nu, profile.mu
    tags = []
    for (t, _s), low, up in zip(polygon.vertices, polygon.on_lower, polygon.on_upper):
        if t == t_lo:
            position = "leftmost"
        elif t == t_hi:
            position = "rightmost"
        else:
            position = "interior"
        if low and up:
            level = "degenerate"
        elif low:
            level = "lower"
        elif up:
            level = "upper"
        else:
            raise InternalError("vertex belongs to neither boundary chain")
        tags.append(f"{position}-{level}")
    return replace(polygon, tags=tuple(tags))


# -- predictions and counts --------------------------------------------------


@dataclass(frozen=True)
class InteriorPrediction:
    t: Fraction
    entering: tuple[str, ...]
    expect_lower: bool
    expect_upper: bool


def predict_interior_vertices(
    model: SurfaceModel, profile: RayProfile, flag: FlagSpec
) -> list[InteriorPrediction]:
    """Predicted interior vertices at each wall, from the dual graph alone.

    A wall contributes a lower vertex iff a connected component of the
    post-wall support contains an entering curve and meets the flag point;
    an upper vertex iff such a component meets C away from the flag point.
    """
    flag.validate(model)
    _, cls = flag.resolved(model)
    out = []
    for seg_prev, seg in zip(profile.segments, profile.segments[1:]):
        t_star = seg.t_lo
        entering = tuple(l for l in seg.support if l not in seg_prev.support)
        if not entering:
            continue
        comps = dual_graph_components(model, seg.support)
        lower = upper = False
        for comp in comps:
            if not any(l in entering for l in comp):
                continue
            if any(flag.mult(l) > 0 for l in comp):
                lower = True
            if any(pair(model, model.class_of(l), cls) - flag.mult(l) > 0 for l in comp):
                upper = True
        out.append(InteriorPrediction(t_star, entering, lower, upper))
    return out


@dataclass(frozen=True)
class RightmostReport:
    count: int
    certified: bool
    observed: int
    flag_in_span: bool


def rightmost_count(
    model: SurfaceModel, profile: RayProfile, divisor, flag
) -> RightmostReport:
    """1 when [C] lies in the span of [D] and the terminal support, else 2
    for a certified-ample flag; uncertified cases fall back to the observed
    count with a warning flag (certified=False)."""
    divisor = as_divisor(divisor, model.rank)
    _, cls = resolve_flag(model, flag)
    if divisor != profile.divisor or cls != profile.flag_class:
        raise InputError("divisor/flag do not match the profile")
    span = [list(divisor.coords)] + [
        list(model.class_of(l).coords) for l in profile.final_support()
    ]
    in_v = linalg.in_span(span, list(cls.coords))
    last = profile.segments[-1]
    p0, p1 = segment_positive_part(model, profile, last)
    width = as_exact(pair(model, p0, cls) + profile.mu * pair(model, p1, cls))
    observed = 1 if width == 0 else 2
    if in_v:
        return RightmostReport(1, True, observed, True)
    if is_model_ample(model, cls):
        return RightmostReport(2, True, observed, False)
    return RightmostReport(observed, False, observed, False)


def side_slopes(model: SurfaceModel, profile: RayProfile, flag: FlagSpec):
    """Per-segment (lower, upper) slopes from intersection numbers only.

    lower = sum a_j1 (C_j.C)_p;  upper = sum a_j1 ((C_j.C)_p - C_j.C) - C^2.
    Cross-checked against the difference quotients of alpha and beta.
    """
    flag.validate(model)
    _, cls = flag.resolved(model)
    csq = pair(model, cls, cls)
    out = []
    for seg in profile.segments:
        lower = Fraction(0)
        upper = -csq
        for l in seg.support:
            a1 = seg.coeffs[l][1]
            m = flag.mult(l)
            lower += a1 * m
            upper += a1 * (m - pair(model, model.class_of(l), cls))
        out.append((lower, upper))
    alpha, beta = alpha_beta(model, profile, flag)
    if tuple(s[0] for s in out) != alpha.slopes() or tuple(
        s[1] for s in out
    ) != beta.slopes():
        raise InternalError("slope formulas disagree with the boundary functions")
    return out


@dataclass(frozen=True)
class Side:
    start: tuple
    end: tuple
    dt: object
    ds: object


def side_lengths(polygon: OkPolygon) -> list[Side]:
    """Exact (dt, ds) of every side, counterclockwise from the first vertex."""
    vs = polygon.vertices
    out = []
    for a, b in zip(vs, vs[1:] + vs[:1]):
        out.append(Side(a, b, as_exact(b[0] - a[0]), as_exact(b[1] - a[1])))
    return out


def leftmost_vertical_length(polygon: OkPolygon):
    """Length of the leftmost vertical side (0 when the polygon has a single
    leftmost vertex)."""
    t_min = min(v[0] for v in polygon.vertices)
    svals = [v[1] for v in polygon.vertices if v[0] == t_min]
    return as_exact(max(svals) - min(svals))


def leftmost_side_check(model: SurfaceModel, divisor, flag, candidates):
    """Independent value of the leftmost side length: P_0.C from a fresh
    decomposition of D itself."""
    divisor = as_divisor(divisor, model.rank)
    flag_label, cls = resolve_flag(model, flag)
    cands = list(candidates)
    if flag_label is not None and flag_label not in cands:
        cands.append(flag_label)
    dec = zariski_decompose(model, divisor, cands)
    return pair(model, dec.positive_part, cls)


# -- configuration invariants ------------------------------------------------


def mc(model: SurfaceModel, config) -> int:
    """Largest number of curves in a connected subdivisor of the configuration."""
    labels = list(config)
    if not is_negative_definite(model, labels):
        raise InputError(f"configuration {labels} is not negative definite")
    comps = dual_graph_components(model, labels)
    return max((len(c) for c in comps), default=0)


def mv(model: SurfaceModel, config) -> int:
    """Vertex-count invariant of a negative definite configuration."""
    labels = list(config)
    k = len(labels)
    if k > model.rank - 1:
        raise InputError(
            f"configuration of {k} curves exceeds the Hodge bound rank-1 = {model.rank - 1}"
        )
    m = mc(model, labels)
    return k + m + (4 if k < model.rank - 1 else 3)


@dataclass(frozen=True)
class BoundReport:
    vertex_count: int
    mv_bound: int
    picard_bound: int
    interior_lower: int
    interior_lower_bound: int
    interior_upper: int
    interior_upper_bound: int

    @property
    def ok(self) -> bool:
        return (
            self.vertex_count <= self.mv_bound <= self.picard_bound
            and self.interior_lower <= self.interior_lower_bound
            and self.interior_upper <= self.interior_upper_bound
        )


def vertex_bound_check(
    model: SurfaceModel,
    polygon: OkPolygon,
    profile: RayProfile,
    flag: FlagSpec,
) -> BoundReport:
    """Assert the vertex-count bounds against the terminal support.

    Total vertices are bounded by the configuration invariant of the support
    at mu (itself at most 2*rank+1).  Interior lower vertices are bounded by
    the size of the flag-point component of that support; interior upper
    vertices by the curves in components meeting C away from the flag point.
    A component through the point counts toward both sides whenever one of
    its curves also meets C elsewhere.
    """
    if polygon.tags is None:
        polygon = classify_vertices(polygon, profile)
    _, flag_cls = flag.resolved(model)
    support = list(profile.final_support())
    bound = mv(model, support)
    picard = 2 * model.rank + 1
    comps = dual_graph_components(model, support)
    p_curves: set[str] = set()
    away_curves: set[str] = set()
    for comp in comps:
        if any(flag.mult(l) > 0 for l in comp):
            p_curves.update(comp)
        if any(
            pair(model, model.class_of(l), flag_cls) - flag.mult(l) > 0 for l in comp
        ):
            away_curves.update(comp)
    lower_bound = len(p_curves)
    upper_bound = len(away_curves)
    lower = sum(1 for t in polygon.tags if t == "interior-lower")
    upper = sum(1 for t in polygon.tags if t == "interior-upper")
    report = BoundReport(
        vertex_count=len(polygon.vertices),
        mv_bound=bound,
        picard_bound=picard,
        interior_lower=lower,
        interior_lower_bound=lower_bound,
        interior_upper=upper,
        interior_upper_bound=upper_bound,
    )
    if not report.ok:
        raise TheoremViolation(f"vertex bounds violated: {report}")
    return report
