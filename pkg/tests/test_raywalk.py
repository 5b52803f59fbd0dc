from fractions import Fraction

import pytest

from helpers import corpus
from noksurf import (
    CurveRecord,
    DivisorClass,
    ModelError,
    QExt,
    SurfaceModel,
    appearance_times,
    nu,
    pair,
    walk_ray,
)
from noksurf.raywalk import segment_positive_part

BL1 = SurfaceModel(
    2,
    [[1, 0], [0, -1]],
    [CurveRecord("E", (0, 1)), CurveRecord("C", (2, -1))],
    (2, -1),
)
P2 = SurfaceModel(1, [[1]], [CurveRecord("H", (1,))], (1,))


def test_nu_examples():
    assert nu(BL1, DivisorClass((3, -1)), "C", ["E"]) == 0
    assert nu(BL1, DivisorClass((1, 1)), "E", ["E"]) == 1
    assert nu(BL1, DivisorClass((2, -1)), "E", ["E"]) == 0  # nef class


def test_walk_blowup_ample():
    prof = walk_ray(BL1, DivisorClass((3, -1)), "C", ["E"])
    assert prof.nu == 0
    assert prof.mu == Fraction(3, 2)
    assert prof.radicand == 0
    assert [s.support for s in prof.segments] == [(), ("E",)]
    assert prof.segments[0].t_lo == 0 and prof.segments[0].t_hi == 1
    assert prof.segments[1].t_hi == Fraction(3, 2)
    assert prof.segments[1].coeffs["E"] == (Fraction(-1), Fraction(1))
    assert appearance_times(prof) == [("E", Fraction(1))]


def test_walk_negative_flag():
    prof = walk_ray(BL1, DivisorClass((1, 1)), "E", ["E"])
    assert prof.nu == 1
    assert prof.mu == 2
    assert len(prof.segments) == 1
    assert prof.segments[0].support == ()
    assert appearance_times(prof) == []


def test_walk_p2():
    for d in (1, 2, 5):
        prof = walk_ray(P2, DivisorClass((d,)), "H", [])
        assert prof.nu == 0 and prof.mu == d
        assert len(prof.segments) == 1


def test_walk_flag_as_class_resolves_declared():
    by_label = walk_ray(BL1, DivisorClass((3, -1)), "C", ["E"])
    by_class = walk_ray(BL1, DivisorClass((3, -1)), DivisorClass((2, -1)), ["E"])
    assert by_label.flag_label == by_class.flag_label == "C"
    assert by_label.mu == by_class.mu


def test_walk_irrational_mu():
    # chain model; P_t = (4-5t, -2+2t, -1+t) has
    # P^2 = 20t^2 - 30t + 11 with roots 3/4 +- sqrt(5)/20, both below the
    # walls at t = 1, so the ray exits in a single chamber at an irrational mu
    m = SurfaceModel(
        3,
        [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
        [CurveRecord("C1", (0, 1, -1)), CurveRecord("C2", (0, 0, 1))],
        (3, -2, -1),
    )
    d = DivisorClass((4, -2, -1))
    c = DivisorClass((5, -2, -1))
    prof = walk_ray(m, d, c, ["C1", "C2"])
    assert prof.mu == QExt(Fraction(3, 4), Fraction(-1, 20), 5)
    assert prof.radicand == 5
    assert len(prof.segments) == 1 and prof.segments[0].support == ()
    # exact root of the quadratic
    dd, dc, cc = pair(m, d, d), pair(m, d, c), pair(m, c, c)
    assert dd - 2 * prof.mu * dc + prof.mu * prof.mu * cc == 0
    # and the conjugate root is larger, so this is the first exit
    other = QExt(Fraction(3, 4), Fraction(1, 20), 5)
    assert prof.mu < other


def test_walk_rejects_non_big():
    with pytest.raises(ModelError):
        walk_ray(BL1, DivisorClass((0, 1)), "C", ["E"])  # E itself: P = 0


def test_walk_monotone_support_and_positivity_on_corpus():
    for case in corpus(seed=501, count=40):
        prof = walk_ray(case.model, case.divisor, case.flag, case.candidates)
        # contiguity and monotone supports
        assert prof.segments[0].t_lo == prof.nu
        assert prof.segments[-1].t_hi == prof.mu
        for a, b in zip(prof.segments, prof.segments[1:]):
            assert a.t_hi == b.t_lo
            assert set(a.support) <= set(b.support)
        # appearance times are the segment left endpoints, all rational
        for l, t in prof.appearance.items():
            assert isinstance(t, Fraction)
        # flag never in support
        for seg in prof.segments:
            assert prof.flag_label not in seg.support
        # P^2 positive strictly inside, zero at mu
        last = prof.segments[-1]
        p0, p1 = segment_positive_part(case.model, prof, last)
        a = pair(case.model, p1, p1)
        b = pair(case.model, p0, p1)
        c = pair(case.model, p0, p0)
        assert c + 2 * b * prof.mu + a * prof.mu * prof.mu == 0
        for seg in prof.segments:
            p0, p1 = segment_positive_part(case.model, prof, seg)
            mid = (seg.t_lo + (seg.t_lo + 1)) / 2  # inside only if < t_hi
            ts = [seg.t_lo, mid] if mid < seg.t_hi else [seg.t_lo]
            for t in ts:
                val = (
                    pair(case.model, p0, p0)
                    + 2 * t * pair(case.model, p0, p1)
                    + t * t * pair(case.model, p1, p1)
                )
                assert val > 0


def test_slope_monotonicity_at_walls_on_corpus():
    # surviving curves never lose slope across a wall, and positive linkage
    # to a strictly accelerating curve propagates strictness
    checked = 0
    for case in corpus(seed=733, count=60):
        prof = walk_ray(case.model, case.divisor, case.flag, case.candidates)
        for a, b in zip(prof.segments, prof.segments[1:]):
            for l in a.support:
                s_old, s_new = a.coeffs[l][1], b.coeffs[l][1]
                assert s_new >= s_old
                checked += 1
            strict = {
                l for l in b.support
                if l not in a.support or b.coeffs[l][1] > a.coeffs[l][1]
            }
            for l in a.support:
                if l in strict:
                    continue
                linked = any(
                    pair(
                        case.model,
                        case.model.class_of(l),
                        case.model.class_of(other),
                    )
                    > 0
                    for other in strict
                )
                assert not linked, f"{case.name}: {l} linked but not strict"
    assert checked > 5


def test_nu_matches_initial_coefficient():
    for case in corpus(seed=88, count=30):
        got = nu(case.model, case.divisor, case.flag, case.candidates)
        assert got >= 0
        if case.ample_divisor:
            assert got == 0


def test_coefficient_continuity_at_walls():
    for case in corpus(seed=4242, count=40):
        prof = walk_ray(case.model, case.divisor, case.flag, case.candidates)
        for a, b in zip(prof.segments, prof.segments[1:]):
            t = a.t_hi
            for l in a.support:
                assert a.coefficient_at(l, t) == b.coefficient_at(l, t)
            for l in b.support:
                if l not in a.support:
                    assert b.coefficient_at(l, t) == 0
