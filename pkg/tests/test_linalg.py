import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import leading_minor_inertia, random_unimodular
from noksurf.errors import InputError
from noksurf.linalg import SingularSystem, in_span, inertia, rank, solve, solve_many


def test_solve_exact():
    # 2x + y = 5, x - y = 1  ->  x = 2, y = 1
    assert solve([[2, 1], [1, -1]], [5, 1]) == [2, 1]
    x = solve([[Fraction(1, 3)]], [1])
    assert x == [3]


def test_solve_singular():
    with pytest.raises(SingularSystem):
        solve([[1, 2], [2, 4]], [1, 1])


def test_solve_many_columns():
    cols = solve_many([[2, 0], [0, 4]], [[2, 4], [1, 0]])
    assert cols == [[1, 1], [Fraction(1, 2), 0]]


def test_inertia_examples():
    assert inertia([[1, 0], [0, -1]]) == (1, 1, 0)
    # leading principal minors -2, 3: two sign changes
    assert inertia([[-2, 1], [1, -2]]) == (0, 2, 0)
    assert inertia([[1]]) == (1, 0, 0)
    assert inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert inertia([[0, 0], [0, 0]]) == (0, 0, 2)
    assert inertia([[1, 1], [1, 1]]) == (1, 0, 1)


def test_inertia_rejects_nonsymmetric():
    with pytest.raises(InputError):
        inertia([[0, 1], [2, 0]])


def test_inertia_matches_minor_oracle():
    rng = random.Random(3)
    hits = 0
    while hits < 60:
        n = rng.randrange(1, 5)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randrange(-4, 5)
        minors_ok = True
        for k in range(1, n + 1):
            sub = [row[:k] for row in m[:k]]
            if inertia(sub)[2] > 0:
                minors_ok = False
                break
        if not minors_ok:
            continue
        try:
            assert inertia(m) == leading_minor_inertia(m)
        except AssertionError:
            raise
        hits += 1


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=10**6))
@settings(max_examples=120)
def test_inertia_congruence_invariance(n, seed):
    rng = random.Random(seed)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rng.randrange(-5, 6)
    s = random_unimodular(rng, n)
    st_m_s = [
        [
            sum(s[k][i] * m[k][l] * s[l][j] for k in range(n) for l in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    assert inertia(st_m_s) == inertia(m)


def test_rank_and_span():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([]) == 0
    assert in_span([[1, 0], [0, 1]], [3, 4])
    assert not in_span([[1, 1]], [1, 0])
    assert in_span([[2, 2]], [1, 1])
