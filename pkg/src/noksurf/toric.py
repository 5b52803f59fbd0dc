"""Independent toric verification path.

A smooth complete fan in Z^2 yields a surface model by the classical
intersection rules on the boundary divisors; a torus-invariant nef divisor
yields its Newton polygon by intersecting the corner half-planes.  The
monomial valuation at a torus-fixed point maps that polygon onto the
Newton-Okounkov polygon of the matching flag, and the two computations must
agree vertex for vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DegenerateInput, InputError, InternalError, OracleMismatch
from .lattice import CurveRecord, DivisorClass, SurfaceModel, pair
from .polygon import (
    FlagSpec,
    alpha_beta,
    build_polygon,
    polygon_area2,
)
from .raywalk import walk_ray
from .qext import as_exact

Point = tuple[Fraction, Fraction]


def _det(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _angular_key(v):
    """Sort key realizing the counterclockwise order from the positive x-axis."""
    x, y = v
    if y > 0:
        half = 0
    elif y < 0:
        half = 1
    else:
        half = 0 if x > 0 else 1
    return half, Fraction(-x, y) if y != 0 else Fraction(-10**9)


@dataclass(frozen=True)
class ToricFan:
    """Complete smooth fan: primitive rays, counterclockwise, unimodular steps."""

    rays: tuple[tuple[int, int], ...]

    def __init__(self, rays):
        rr = tuple((int(x), int(y)) for x, y in rays)
        if len(rr) < 3:
            raise InputError("a complete fan needs at least three rays")
        from math import gcd

        for v in rr:
            if v == (0, 0) or gcd(abs(v[0]), abs(v[1])) != 1:
                raise InputError(f"ray {v} is not primitive")
        if len(set(rr)) != len(rr):
            raise InputError("rays must be distinct")
        for i, v in enumerate(rr):
            w = rr[(i + 1) % len(rr)]
            if _det(v, w) != 1:
                raise InputError(
                    f"consecutive rays {v}, {w} are not a positively oriented "
                    "unimodular pair"
                )
        # one full counterclockwise sweep: exactly one wrap in the angular order
        wraps = sum(
            1
            for i in range(len(rr))
            if _angular_key(rr[(i + 1) % len(rr)]) < _angular_key(rr[i])
        )
        if wraps != 1:
            raise InputError("rays do not sweep the plane exactly once")
        object.__setattr__(self, "rays", rr)

    def __len__(self):
        return len(self.rays)

    def ray(self, i: int) -> tuple[int, int]:
        """1-based, cyclic."""
        return self.rays[(i - 1) % len(self.rays)]


@dataclass(frozen=True)
class ToricDivisor:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in coeffs))


def _check_lengths(fan: ToricFan, div: ToricDivisor):
    if len(div.coeffs) != len(fan):
        raise InputError("divisor has one coefficient per ray")


def self_intersections(fan: ToricFan) -> list[int]:
    """b_i with v_{i-1} + v_{i+1} = b_i v_i; the boundary curve D_i has D_i^2 = -b_i."""
    n = len(fan)
    out = []
    for i in range(n):
        u = fan.rays[(i - 1) % n]
        w = fan.rays[(i + 1) % n]
        s = (u[0] + w[0], u[1] + w[1])
        v = fan.rays[i]
        if v[0] != 0:
            b, rem = divmod(s[0], v[0])
            ok = rem == 0 and b * v[1] == s[1]
        else:
            b, rem = divmod(s[1], v[1])
            ok = rem == 0 and b * v[0] == s[0]
        if not ok:
            raise InternalError(f"rays adjacent to {v} do not close up")
        out.append(b)
    return out


def combinatorial_edge_lengths(fan: ToricFan, div: ToricDivisor) -> list[Fraction]:
    """D . D_i for every i by the boundary intersection rules alone."""
    _check_lengths(fan, div)
    n = len(fan)
    b = self_intersections(fan)
    a = div.coeffs
    return [
        Fraction(a[(i - 1) % n] + a[(i + 1) % n] - b[i] * a[i]) for i in range(n)
    ]


def fan_to_model(fan: ToricFan) -> tuple[SurfaceModel, list[DivisorClass]]:
    """Surface model of the fan plus the classes of all boundary divisors.

    The basis drops the last two boundary divisors and rewrites them through
    the two character relations; the ample witness is the zonotope divisor
    summing one primitive segment per ray, which is strictly convex on every
    fan.
    """
    n = len(fan)
    rho = n - 2
    b = self_intersections(fan)

    # classes: D_i = e_i for i < n-1; the last two via <m, v_i> relations
    vm, vn = fan.rays[n - 2], fan.rays[n - 1]
    # m with <m, v_{n-1}> = 1, <m, v_n> = 0 and m' with the roles swapped
    m_row, mp_row = linalg.solve_many(
        [[vm[0], vm[1]], [vn[0], vn[1]]], [[1, 0], [0, 1]]
    )

    def dropped_class(row):
        return tuple(
            -(row[0] * fan.rays[i][0] + row[1] * fan.rays[i][1]) for i in range(rho)
        )

    classes: list[tuple[Fraction, ...]] = [
        tuple(Fraction(1) if j == i else Fraction(0) for j in range(rho))
        for i in range(rho)
    ]
    classes.append(dropped_class(m_row))
    classes.append(dropped_class(mp_row))
    int_classes = []
    for cls in classes:
        ints = []
        for x in cls:
            if Fraction(x).denominator != 1:
                raise InternalError("boundary class is not integral")
            ints.append(int(x))
        int_classes.append(tuple(ints))

    def rule(i: int, j: int) -> int:
        if i == j:
            return -b[i]
        if (j - i) % n == 1 or (i - j) % n == 1:
            return 1
        return 0

    gram = [[rule(i, j) for j in range(rho)] for i in range(rho)]
    curves = [CurveRecord(f"D{i + 1}", int_classes[i]) for i in range(n)]
    witness_coeffs = _zonotope_divisor(fan)
    witness = [Fraction(0)] * rho
    for ai, cls in zip(witness_coeffs, int_classes):
        for j in range(rho):
            witness[j] += ai * cls[j]
    model = SurfaceModel(rho, gram, curves, witness)

    # the chosen basis must reproduce every boundary intersection number
    out_classes = [DivisorClass(c) for c in int_classes]
    for i in range(n):
        for j in range(n):
            got = pair(model, out_classes[i], out_classes[j])
            if got != rule(i, j):
                raise InternalError(
                    f"basis classes give D{i+1}.D{j+1} = {got}, rules give {rule(i, j)}"
                )
    return model, out_classes


def _zonotope_divisor(fan: ToricFan) -> list[int]:
    """Support numbers of the Minkowski sum of one primitive edge per ray."""
    out = []
    for v in fan.rays:
        a = 0
        for w in fan.rays:
            rot = (-w[1], w[0])
            dot = rot[0] * v[0] + rot[1] * v[1]
            if dot < 0:
                a -= dot
        out.append(a)
    return out


def _rotate_to_lex_min(points: list[Point]) -> list[Point]:
    if not points:
        return points
    k = min(range(len(points)), key=lambda i: points[i])
    return points[k:] + points[:k]


def newton_polygon(fan: ToricFan, div: ToricDivisor) -> list[Point]:
    """Vertices of {m : <m, v_i> >= -a_i}, counterclockwise from the
    lexicographically smallest.

    Requires the divisor to be nef, which is exactly nonnegativity of all
    corner-to-corner edge lengths; a negative length means the corner system
    is infeasible.
    """
    _check_lengths(fan, div)
    n = len(fan)
    a = div.coeffs
    corners: list[Point] = []
    for i in range(n):
        v, w = fan.rays[i], fan.rays[(i + 1) % n]
        sol = linalg.solve([[v[0], v[1]], [w[0], w[1]]], [-a[i], -a[(i + 1) % n]])
        corners.append((sol[0], sol[1]))

    lengths = combinatorial_edge_lengths(fan, div)
    for i in range(n):
        prev, cur = corners[(i - 1) % n], corners[i]
        direction = (Fraction(fan.rays[i][1]), Fraction(-fan.rays[i][0]))
        delta = (cur[0] - prev[0], cur[1] - prev[1])
        # delta must be a nonnegative multiple of the primitive edge direction
        if direction[0] != 0:
            ell = delta[0] / direction[0]
        else:
            ell = delta[1] / direction[1]
        if delta != (ell * direction[0], ell * direction[1]):
            raise InternalError("corner walk left the expected edge direction")
        if ell != lengths[i]:
            raise InternalError(
                f"geometric edge length {ell} disagrees with D.D{i+1} = {lengths[i]}"
            )
        if ell < 0:
            raise DegenerateInput(
                f"divisor is not nef: edge along ray {fan.rays[i]} has length {ell}"
            )

    out: list[Point] = []
    for p in corners:
        if not out or out[-1] != p:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return _rotate_to_lex_min(out)


def monomial_okounkov(fan: ToricFan, div: ToricDivisor, flag_index: int) -> list[Point]:
    """Image of the Newton polygon under the valuation at the fixed point
    D_i meet D_{i+1}: m maps to (<m, v_i> + a_i, <m, v_{i+1}> + a_{i+1}).

    The map is affine unimodular with positive determinant, so the image is
    again counterclockwise; only the starting vertex needs renormalizing.
    """
    _check_lengths(fan, div)
    n = len(fan)
    if not 1 <= flag_index <= n:
        raise InputError(f"flag index must be in 1..{n}")
    v = fan.ray(flag_index)
    w = fan.ray(flag_index + 1)
    av = div.coeffs[flag_index - 1]
    aw = div.coeffs[flag_index % n]
    pts = newton_polygon(fan, div)
    image = [
        (m[0] * v[0] + m[1] * v[1] + av, m[0] * w[0] + m[1] * w[1] + aw) for m in pts
    ]
    return _rotate_to_lex_min(image)


@dataclass(frozen=True)
class CrosscheckReport:
    equal: bool
    walk_vertices: tuple[Point, ...]
    monomial_vertices: tuple[Point, ...]
    area2: Fraction
    divisor_square: Fraction


def crosscheck(fan: ToricFan, div: ToricDivisor, flag_index: int) -> CrosscheckReport:
    """Compute the polygon both ways and demand exact vertex-set equality.

    Route one walks the ray against the fan's surface model with flag curve
    D_i and the single local multiplicity (D_{i+1} . D_i)_p = 1; route two
    maps the Newton polygon through the monomial valuation.  With the
    explicit map implemented, equality is on the nose, not up to a lattice
    transformation.  Twice the common area must equal D^2.
    """
    _check_lengths(fan, div)
    n = len(fan)
    lengths = combinatorial_edge_lengths(fan, div)
    if any(l <= 0 for l in lengths):
        raise InputError("divisor is not model-ample against all boundary curves")

    model, classes = fan_to_model(fan)
    d_class = DivisorClass([0] * model.rank)
    for ai, cls in zip(div.coeffs, classes):
        d_class = d_class + cls.scale(ai)
    dsq = pair(model, d_class, d_class)
    if dsq <= 0:
        raise InputError("divisor has nonpositive self-intersection")

    flag_label = f"D{((flag_index - 1) % n) + 1}"
    next_label = f"D{(flag_index % n) + 1}"
    profile = walk_ray(model, d_class, flag_label, model.labels())
    flag = FlagSpec(flag_label, {next_label: 1})
    alpha, beta = alpha_beta(model, profile, flag)
    poly = build_polygon(alpha, beta)
    walk_pts = []
    for t, s in poly.vertices:
        t, s = as_exact(t), as_exact(s)
        if not isinstance(t, Fraction) or not isinstance(s, Fraction):
            raise OracleMismatch("walk polygon has irrational vertices on toric input")
        walk_pts.append((t, s))
    walk_pts = _rotate_to_lex_min(walk_pts)

    mono_pts = monomial_okounkov(fan, div, flag_index)
    area2 = polygon_area2(poly)
    equal = walk_pts == mono_pts and area2 == dsq
    report = CrosscheckReport(
        equal=equal,
        walk_vertices=tuple(walk_pts),
        monomial_vertices=tuple(mono_pts),
        area2=area2,
        divisor_square=dsq,
    )
    if not equal:
        raise OracleMismatch(
            "toric oracle disagrees: "
            f"walk {walk_pts} vs monomial {mono_pts}; 2*area {area2}, D^2 {dsq}"
        )
    return report
