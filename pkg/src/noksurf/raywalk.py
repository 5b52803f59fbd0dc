"""Walk the ray D - t*C through the chamber structure of the big cone.

The walk starts at t = nu (the coefficient of the flag curve in the negative
part of D) and moves right.  On each chamber the negative-part coefficients
are affine in t, solved exactly from the orthogonality system on the current
support.  The next event is either a wall crossing, where some candidate's
pairing with the moving positive part decreases through zero and the support
is enlarged by a derivative-test fixed point, or the exit of the big cone,
where the quadratic P_t^2 reaches zero and defines mu (rational, or in a
single quadratic extension).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import InputError, InternalError, ModelError
from .lattice import (
    DivisorClass,
    SurfaceModel,
    as_divisor,
    gram_matrix,
    pair,
)
from .qext import QExt, as_exact, sqrt_fraction
from .zariski import zariski_decompose


@dataclass(frozen=True)
class Segment:
    """One chamber of the walk: support and affine coefficients on [t_lo, t_hi]."""

    t_lo: Fraction
    t_hi: Fraction | QExt
    support: tuple[str, ...]  # in order of appearance
    coeffs: dict[str, tuple[Fraction, Fraction]]  # label -> (a0, a1)

    def coefficient_at(self, label: str, t):
        a0, a1 = self.coeffs[label]
        return a0 + a1 * t


@dataclass(frozen=True)
class RayProfile:
    nu: Fraction
    mu: Fraction | QExt
    radicand: int  # 0 when mu is rational
    segments: tuple[Segment, ...]
    appearance: dict[str, Fraction]
    flag_label: str | None
    flag_class: DivisorClass
    divisor: DivisorClass
    candidates: tuple[str, ...]

    def final_support(self) -> tuple[str, ...]:
        """Support of the negative part at mu (the largest support reached)."""
        return self.segments[-1].support if self.segments else ()


def resolve_flag(model: SurfaceModel, flag) -> tuple[str | None, DivisorClass]:
    """Accept a declared label or a raw class for the flag curve.

    A raw class that coincides with a declared curve resolves to its label;
    otherwise it is carried as an asserted-irreducible class with no
    declared negativity (its coefficient in any decomposition is 0).
    """
    if isinstance(flag, str):
        return flag, model.class_of(flag)
    cls = as_divisor(flag, model.rank)
    for rec in model.curves:
        if DivisorClass(rec.cls) == cls:
            return rec.label, cls
    if cls.is_zero():
        raise InputError("flag class must be nonzero")
    return None, cls


def _validated_candidates(model: SurfaceModel, candidates) -> list[str]:
    cands = list(candidates)
    if len(set(cands)) != len(cands):
        raise InputError("candidate labels must be pairwise distinct")
    for l in cands:
        model.curve(l)
    return sorted(cands, key=model.declaration_index)


def nu(model: SurfaceModel, divisor, flag, candidates) -> Fraction:
    """Coefficient of the flag curve in the negative part of D itself."""
    divisor = as_divisor(divisor, model.rank)
    flag_label, _ = resolve_flag(model, flag)
    cands = _validated_candidates(model, candidates)
    if flag_label is not None and flag_label not in cands:
        cands.append(flag_label)
    dec = zariski_decompose(model, divisor, cands)
    if flag_label is None:
        return Fraction(0)
    return dec.coefficient(flag_label)


def _segment_system(model, divisor, flag_class, support):
    """Affine solution on a support: coefficients and the moving positive part.

    Returns (coeffs, p0, p1) with a_j(t) = a0_j + a1_j*t and
    P_t = p0 + t*p1.
    """
    if support:
        gram = gram_matrix(model, support)
        sig = linalg.inertia(gram)
        if sig != (0, len(support), 0):
            raise ModelError(
                f"support {list(support)} is not negative definite (inertia {sig})"
            )
        rhs0 = [pair(model, divisor, model.class_of(l)) for l in support]
        rhs1 = [-pair(model, flag_class, model.class_of(l)) for l in support]
        try:
            a0, a1 = linalg.solve_many(gram, [rhs0, rhs1])
        except linalg.SingularSystem:  # unreachable after the inertia check
            raise ModelError(f"singular Gram system on {list(support)}") from None
    else:
        a0, a1 = [], []
    coeffs = {l: (a0[i], a1[i]) for i, l in enumerate(support)}
    p0 = divisor
    p1 = -flag_class
    for i, l in enumerate(support):
        cls = model.class_of(l)
        p0 = p0 - cls.scale(a0[i])
        p1 = p1 - cls.scale(a1[i])
    return coeffs, p0, p1


def _enlarge_support(model, divisor, flag_class, support, t_star, entry_order):
    """Fixed point of the derivative test at a wall.

    Candidates sitting on the wall (pairing exactly 0 at t_star) join the
    support as long as their pairing against the refreshed positive part
    still decreases; entrants whose solved coefficient is identically zero
    are wall-touchers and are dropped again.
    """
    coeffs, p0, p1 = _segment_system(model, divisor, flag_class, support)
    wall = [
        l
        for l in entry_order
        if l not in support
        and pair(model, p0, model.class_of(l)) + t_star * pair(model, p1, model.class_of(l)) == 0
    ]
    current = list(support)
    while True:
        _, _, p1_cur = _segment_system(model, divisor, flag_class, current)
        adds = [
            l
            for l in wall
            if l not in current and pair(model, p1_cur, model.class_of(l)) < 0
        ]
        if not adds:
            break
        current = current + adds
    coeffs, _, _ = _segment_system(model, divisor, flag_class, current)
    kept = list(support)
    for l in current[len(support) :]:
        a0, a1 = coeffs[l]
        if a0 + a1 * t_star != 0:
            raise InternalError(f"entrant {l!r} has nonzero coefficient at its wall")
        if a1 < 0:
            raise ModelError(
                f"support decreased; invalid model input (entrant {l!r} "
                f"solves to negative slope {a1})"
            )
        if a1 > 0:
            kept.append(l)
    return kept


def _first_quadratic_root(p0sq: Fraction, cross: Fraction, p1sq: Fraction, t_cur):
    """Smallest root > t_cur of p0sq + 2*cross*t + p1sq*t^2, exactly.

    Returns None when the quadratic never reaches zero beyond t_cur.
    """
    if p1sq == 0:
        if cross == 0:
            return None
        root = Fraction(-p0sq, 2 * cross)
        return root if root > t_cur else None
    half_disc = cross * cross - p1sq * p0sq  # (b/2)^2 - a*c
    if half_disc < 0:
        return None
    sq = sqrt_fraction(half_disc)
    roots = sorted(
        [as_exact((-cross + sq) / p1sq), as_exact((-cross - sq) / p1sq)],
    )
    for r in roots:
        if r > t_cur:
            return r
    return None


def walk_ray(model: SurfaceModel, divisor, flag, candidates) -> RayProfile:
    """Full chamber walk of D - t*C from nu to mu.

    The flag curve is monitored like a candidate: it must never re-enter the
    support past nu, or the input data is inconsistent.
    """
    divisor = as_divisor(divisor, model.rank)
    flag_label, flag_class = resolve_flag(model, flag)
    cands = _validated_candidates(model, candidates)
    if flag_label is not None and flag_label not in cands:
        cands_full = sorted(cands + [flag_label], key=model.declaration_index)
    else:
        cands_full = list(cands)
    entry_order = [l for l in cands_full if l != flag_label]

    dec0 = zariski_decompose(model, divisor, cands_full)
    t_nu = dec0.coefficient(flag_label) if flag_label is not None else Fraction(0)

    start = divisor - flag_class.scale(t_nu)
    dec_nu = zariski_decompose(model, start, cands_full)
    if flag_label is not None and flag_label in dec_nu.support:
        raise ModelError("flag curve still in the negative part at t = nu")
    p_nu = dec_nu.positive_part
    if pair(model, p_nu, p_nu) <= 0:
        raise ModelError("divisor is not big against the model")

    support = sorted(dec_nu.support, key=model.declaration_index)
    appearance: dict[str, Fraction] = {l: t_nu for l in support}
    # a wall may sit exactly at nu; enlarge before the first segment
    support = _enlarge_support(model, divisor, flag_class, support, t_nu, entry_order)
    for l in support:
        appearance.setdefault(l, t_nu)

    segments: list[Segment] = []
    t_cur = t_nu
    mu = None
    radicand = 0
    for _ in range(len(entry_order) + 2):
        coeffs, p0, p1 = _segment_system(model, divisor, flag_class, support)

        # candidate walls ahead of t_cur
        events: list[tuple[Fraction, str]] = []
        for l in entry_order:
            if l in support:
                continue
            cls = model.class_of(l)
            val = pair(model, p0, cls) + t_cur * pair(model, p1, cls)
            slope = pair(model, p1, cls)
            if val < 0 or (val == 0 and slope < 0):
                raise InternalError(f"pairing against {l!r} already negative at segment start")
            if slope < 0:
                events.append((-pair(model, p0, cls) / slope, l))

        # exit of the big cone
        p0sq = pair(model, p0, p0)
        cross = pair(model, p0, p1)
        p1sq = pair(model, p1, p1)
        if p0sq + 2 * cross * t_cur + p1sq * t_cur * t_cur <= 0:
            raise InternalError("positive part lost its positivity inside a segment")
        mu_candidate = _first_quadratic_root(p0sq, cross, p1sq, t_cur)
        if mu_candidate is None:
            raise ModelError("ray never exits big cone in model")

        next_event = min((te for te, _ in events), default=None)
        if next_event is None or mu_candidate <= next_event:
            t_hi = mu_candidate
            mu = mu_candidate
            if isinstance(mu, QExt):
                radicand = mu.d
        else:
            t_hi = next_event

        # flag monitor: its pairing must stay nonnegative up to the segment end
        fval = pair(model, p0, flag_class) + t_cur * pair(model, p1, flag_class)
        fslope = pair(model, p1, flag_class)
        if fval < 0 or (fval == 0 and fslope < 0):
            raise ModelError("flag curve pairs negatively along the ray; invalid model input")
        if fslope < 0 and -pair(model, p0, flag_class) / fslope < t_hi:
            raise ModelError(
                "flag curve enters the negative part inside the ray; invalid model input"
            )

        for l in support:
            a0, a1 = coeffs[l]
            if a0 + a1 * t_hi <= 0:
                raise ModelError(
                    f"support decreased; invalid model input (coefficient of {l!r} "
                    f"vanishes before the segment ends)"
                )
        for l in entry_order:
            if l not in support:
                cls = model.class_of(l)
                if pair(model, p0, cls) + t_hi * pair(model, p1, cls) < 0:
                    raise InternalError(f"missed a wall for {l!r}")

        segments.append(
            Segment(t_lo=t_cur, t_hi=t_hi, support=tuple(support), coeffs=coeffs)
        )
        if mu is not None:
            break

        new_support = _enlarge_support(
            model, divisor, flag_class, support, t_hi, entry_order
        )
        if len(new_support) == len(support):
            raise InternalError("wall event produced no support growth")
        # continuity: both chambers agree at the wall
        new_coeffs, _, _ = _segment_system(model, divisor, flag_class, new_support)
        for l in support:
            a0, a1 = coeffs[l]
            b0, b1 = new_coeffs[l]
            if a0 + a1 * t_hi != b0 + b1 * t_hi:
                raise InternalError(f"coefficient of {l!r} jumps across the wall")
        for l in new_support[len(support) :]:
            appearance[l] = t_hi
        support = new_support
        t_cur = t_hi
    else:
        raise InternalError("walk did not terminate")

    return RayProfile(
        nu=t_nu,
        mu=mu,
        radicand=radicand,
        segments=tuple(segments),
        appearance=appearance,
        flag_label=flag_label,
        flag_class=flag_class,
        divisor=divisor,
        candidates=tuple(cands_full),
    )


def appearance_times(profile: RayProfile) -> list[tuple[str, Fraction]]:
    """Labels with their entry times, ascending; ties keep declaration order."""
    items = list(profile.appearance.items())
    order = {l: i for i, l in enumerate(profile.candidates)}
    items.sort(key=lambda kv: (kv[1], order.get(kv[0], len(order))))
    return items


def segment_positive_part(model: SurfaceModel, profile: RayProfile, segment: Segment):
    """The affine positive part (p0, p1) with P_t = p0 + t*p1 on a segment."""
    _, p0, p1 = _segment_system(
        model, profile.divisor, profile.flag_class, list(segment.support)
    )
    return p0, p1
