"""Constructive search for flags realizing prescribed polygon vertex counts.

Two layers: find_ordered_ample_class produces an ample class A such that the
ray D - t*A crosses the walls of a given negative configuration one curve at
a time, in the requested order, with a certificate replayed by a full walk;
realize_vertex_count picks a sub-configuration and a flag point placement
whose polygon has exactly the requested number of vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import linalg
from .errors import InputError, SearchFailure, TheoremViolation
from .lattice import (
    DivisorClass,
    SurfaceModel,
    as_divisor,
    dual_graph_components,
    is_model_ample,
    is_negative_definite,
    pair,
)
from .polygon import FlagSpec, OkPolygon, alpha_beta, build_polygon, classify_vertices, mc, mv
from .qext import QExt
from .raywalk import RayProfile, walk_ray
from .zariski import zariski_decompose


@dataclass(frozen=True)
class OrderedFlagCertificate:
    """An ample class whose ray meets the configuration in strict order.

    `flag_class` is used directly as the class of the flag curve; that an
    irreducible curve with this class exists (meeting each configuration
    curve in at least two points after scaling) is a geometric assumption,
    recorded here rather than verified, since lattice data cannot decide it.
    """

    flag_class: DivisorClass
    coefficients: dict[str, Fraction]
    appearance: tuple[tuple[str, Fraction], ...]
    mu: Fraction | QExt
    independent: bool


def _walk_matches(
    model: SurfaceModel, divisor, flag_class, config: list[str]
) -> RayProfile | None:
    """Replay the ray and accept only the exact ordered chamber story."""
    from .errors import InputError as _IE, ModelError as _ME

    try:
        profile = walk_ray(model, divisor, flag_class, model.labels())
    except (_IE, _ME):
        return None
    times = [profile.appearance.get(l) for l in config]
    if None in times or len(profile.appearance) != len(config):
        return None
    if any(t <= 0 for t in times):
        return None
    if any(a >= b for a, b in zip(times, times[1:])):
        return None
    if times and not times[-1] < profile.mu:
        return None
    if set(profile.final_support()) != set(config):
        return None
    return profile


def _sample_times(times: list[Fraction], top: Fraction) -> list[Fraction]:
    """0, midpoints between consecutive wall times, and one above the last."""
    out = [Fraction(0)]
    for a, b in zip(times, times[1:]):
        out.append((a + b) / 2)
    if times:
        out.append((times[-1] + top) / 2)
    return out


def _upper_bound_positive_range(model, base, curve_cls) -> Fraction:
    """Rational upper bound for sup{c > 0 : base - c*curve is model-ample}."""
    bounds = []
    for rec in model.curves:
        cc = DivisorClass(rec.cls)
        num = pair(model, base, cc)
        den = pair(model, curve_cls, cc)
        if den > 0:
            bounds.append(num / den)
    bsq = pair(model, base, base)
    cross = pair(model, base, curve_cls)
    csq = pair(model, curve_cls, curve_cls)
    if csq < 0:
        # rational overestimate of the positive root of bsq - 2c*cross + c^2*csq
        disc = cross * cross - csq * bsq
        from math import isqrt

        n, d = disc.numerator, disc.denominator
        r = isqrt(n * d)
        root_ub = Fraction(r if r * r == n * d else r + 1, d)
        bounds.append((root_ub - cross) / (-csq))
    return min(bounds) if bounds else Fraction(1)


def find_ordered_ample_class(
    model: SurfaceModel,
    divisor,
    ordered_config,
    want_independent: bool = False,
    budget: int = 64,
) -> OrderedFlagCertificate:
    """Build A ample with the chambers of D - t*A crossed in the given order.

    Induction over the configuration: subtract a small multiple of the next
    curve, halving the coefficient until the already-established chamber
    structure, probed by exact decompositions at rational sample times and
    then by a complete walk, is preserved.
    """
    divisor = as_divisor(divisor, model.rank)
    config = list(ordered_config)
    if len(set(config)) != len(config):
        raise InputError("configuration labels must be distinct")
    if not is_model_ample(model, divisor):
        raise InputError("divisor is not model-ample")
    if not is_negative_definite(model, config):
        raise InputError("configuration is not negative definite")
    if want_independent and not len(config) < model.rank - 1:
        raise InputError(
            "an independent flag class needs strictly fewer curves than rank-1"
        )

    current = divisor
    times: list[Fraction] = []
    coefficients: dict[str, Fraction] = {}
    for j, label in enumerate(config):
        cls = model.class_of(label)
        guess = _upper_bound_positive_range(model, current, cls) / 2
        accepted = None
        for _ in range(budget):
            trial = current - cls.scale(guess)
            if is_model_ample(model, trial) and _probe(
                model, divisor, trial, config[: j + 1], times
            ):
                profile = _walk_matches(model, divisor, trial, config[: j + 1])
                if profile is not None:
                    accepted = (trial, profile)
                    break
            guess = guess / 2
        if accepted is None:
            raise SearchFailure(
                f"halving budget exhausted at curve {label!r}; last verified "
                f"prefix {config[:j]} with coefficients {coefficients}"
            )
        current, profile = accepted
        coefficients[label] = guess
        times = [profile.appearance[l] for l in config[: j + 1]]

    independent = False
    if want_independent:
        current, profile = _perturb_independent(
            model, divisor, current, config, budget
        )
        times = [profile.appearance[l] for l in config]
        independent = True
    else:
        profile = _walk_matches(model, divisor, current, config)
        if profile is None:
            raise SearchFailure("final verification walk rejected the class")

    return OrderedFlagCertificate(
        flag_class=current,
        coefficients=dict(coefficients),
        appearance=tuple((l, profile.appearance[l]) for l in config),
        mu=profile.mu,
        independent=independent,
    )


def _probe(model, divisor, flag_class, config, prev_times) -> bool:
    """Exact decompositions at sample times must show the expected prefixes."""
    samples = _sample_times(prev_times, Fraction(1))
    for s in samples:
        dec = zariski_decompose(model, divisor - flag_class.scale(s), model.labels())
        expect = {l for l, t in zip(config, prev_times) if t <= s}
        if set(dec.support) != expect:
            return False
    return True


def _perturb_independent(model, divisor, base, config, budget):
    """Nudge the class off the span of D and the configuration.

    The perturbing class must pair nonnegatively with every declared curve,
    or it would drag extraneous walls into the ray.
    """
    span = [list(divisor.coords)] + [list(model.class_of(l).coords) for l in config]
    options = []
    for i in range(model.rank):
        for sgn in (1, -1):
            vec = [0] * model.rank
            vec[i] = sgn
            b = DivisorClass(vec)
            if linalg.in_span(span, list(b.coords)):
                continue
            if all(
                pair(model, b, DivisorClass(rec.cls)) >= 0 for rec in model.curves
            ):
                options.append(b)
    if not options:
        raise SearchFailure("no perturbation direction pairs nonnegatively with the model")
    for b in options:
        eps = Fraction(1)
        for _ in range(budget):
            trial = base + b.scale(eps)
            if is_model_ample(model, trial) and not linalg.in_span(
                span, list(trial.coords)
            ):
                profile = _walk_matches(model, divisor, trial, config)
                if profile is not None:
                    return trial, profile
            eps = eps / 2
    raise SearchFailure("independent perturbation budget exhausted")


# -- realization --------------------------------------------------------------


@dataclass(frozen=True)
class RealizedFlag:
    target: int
    config: tuple[str, ...]
    placement: str  # "first-curve" | "generic-point" | "second-curve"
    flag_class: DivisorClass
    flag_spec: FlagSpec
    certificate: OrderedFlagCertificate
    profile: RayProfile
    polygon: OkPolygon


def _scale_for_flag(model, certificate, config) -> DivisorClass:
    """Smallest integral multiple meeting each configuration curve twice."""
    cls = certificate.flag_class
    m = lcm(*[Fraction(x).denominator for x in cls.coords]) if len(cls) else 1
    while True:
        scaled = cls.scale(m)
        if all(pair(model, scaled, model.class_of(l)) >= 2 for l in config):
            return scaled
        m += lcm(*[Fraction(x).denominator for x in cls.coords])


def realize_vertex_count(
    model: SurfaceModel, divisor, master_config, v: int, budget: int = 64
) -> RealizedFlag:
    """Produce a flag whose polygon has exactly v vertices, certified.

    The prefix sub-configurations of the master list realize every count in
    range: a prefix with invariant v gets the flag point on its first curve,
    a prefix with invariant v+1 gets the point moved off (or onto the second
    curve when the connected part is larger), dropping exactly one vertex.
    """
    divisor = as_divisor(divisor, model.rank)
    master = list(master_config)
    if not is_negative_definite(model, master):
        raise InputError("master configuration is not negative definite")
    biggest = mc(model, master)
    for i in range(1, biggest + 1):
        if len(dual_graph_components(model, master[:i])) != 1:
            raise InputError(
                "master configuration must be ordered with connected prefixes "
                "up to its largest connected part"
            )
    prefix_mv = [mv(model, master[:j]) for j in range(len(master) + 1)]
    if not isinstance(v, int) or v < 3 or v > max(prefix_mv):
        raise InputError(
            f"target vertex count {v} is outside the achievable range "
            f"3..{max(prefix_mv)}"
        )

    choice = None
    for j, val in enumerate(prefix_mv):
        if val == v:
            choice = (j, "exact")
            break
    if choice is None:
        for j, val in enumerate(prefix_mv):
            if val == v + 1:
                choice = (j, "minus-one")
                break
    if choice is None:
        raise InputError(f"no sub-configuration realizes {v} vertices")

    j, mode = choice
    config = master[:j]
    if mode == "exact":
        want_independent = j < model.rank - 1
        placement = "first-curve" if config else "generic-point"
    else:
        if j == 0:
            want_independent = False
            placement = "generic-point"
        else:
            want_independent = j < model.rank - 1
            placement = "second-curve" if mc(model, config) > 1 else "generic-point"

    certificate = find_ordered_ample_class(
        model, divisor, config, want_independent, budget
    )
    flag_class = _scale_for_flag(model, certificate, config)
    if placement == "first-curve":
        local = {config[0]: 1}
    elif placement == "second-curve":
        local = {config[1]: 1}
    else:
        local = {}
    spec = FlagSpec(flag_class, local)

    profile = walk_ray(model, divisor, flag_class, model.labels())
    alpha, beta = alpha_beta(model, profile, spec)
    polygon = classify_vertices(build_polygon(alpha, beta), profile)
    if len(polygon.vertices) != v:
        raise TheoremViolation(
            f"realization produced {len(polygon.vertices)} vertices instead of {v} "
            f"(config {config}, placement {placement})"
        )
    return RealizedFlag(
        target=v,
        config=tuple(config),
        placement=placement,
        flag_class=flag_class,
        flag_spec=spec,
        certificate=certificate,
        profile=profile,
        polygon=polygon,
    )


def scan_vertex_counts(
    model: SurfaceModel, divisor, master_config, budget: int = 64
) -> list[RealizedFlag]:
    """One realization per achievable count, 3 through the master invariant."""
    master = list(master_config)
    top = max(mv(model, master[:j]) for j in range(len(master) + 1))
    return [
        realize_vertex_count(model, divisor, master, v, budget)
        for v in range(3, top + 1)
    ]
