"""Dense exact linear algebra over the rationals.

Systems here never exceed the Picard rank of a surface model, so plain
Gaussian elimination with exact pivoting is the right tool.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import InputError


class SingularSystem(Exception):
    """Internal signal; callers translate into a domain error."""


def _copy(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def solve_many(a, columns) -> list[list[Fraction]]:
    """Solve a*x = b for each right-hand side in `columns` (exact).

    Raises SingularSystem when the matrix is singular.
    """
    n = len(a)
    for row in a:
        if len(row) != n:
            raise InputError("coefficient matrix is not square")
    aug = _copy(a)
    cols = [_copy([c])[0] for c in columns]
    for i, row in enumerate(aug):
        row.extend(c[i] for c in cols)
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularSystem
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [[aug[i][n + j] for i in range(n)] for j in range(len(cols))]


def solve(a, b) -> list[Fraction]:
    return solve_many(a, [b])[0]


def require_symmetric(q) -> list[list[Fraction]]:
    m = _copy(q)
    n = len(m)
    for row in m:
        if len(row) != n:
            raise InputError("matrix is not square")
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise InputError(f"matrix is not symmetric at ({i},{j})")
    return m


def inertia(q) -> tuple[int, int, int]:
    """Sylvester inertia (n_plus, n_minus, n_zero) by symmetric elimination.

    Exact congruence reduction: diagonal pivots where available, otherwise a
    row+column addition manufactures one (char 0, so 2*m[i][j] != 0).
    """
    m = require_symmetric(q)
    n = len(m)
    pos = neg = zer = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if m[i][i] != 0), None)
        if piv is None:
            spot = next(
                (
                    (i, j)
                    for i in range(k, n)
                    for j in range(i + 1, n)
                    if m[i][j] != 0
                ),
                None,
            )
            if spot is None:
                zer += n - k
                break
            i, j = spot
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            piv = i
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            for row in m:
                row[k], row[piv] = row[piv], row[k]
        p = m[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for r in range(k + 1, n):
            if m[r][k] != 0:
                f = m[r][k] / p
                for c in range(n):
                    m[r][c] -= f * m[k][c]
                for c in range(n):
                    m[c][r] -= f * m[c][k]
        k += 1
    return pos, neg, zer


def rank(rows) -> int:
    m = _copy(rows)
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    r = 0
    for col in range(nc):
        piv = next((i for i in range(r, nr) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == nr:
            break
    return r


def in_span(vectors, v) -> bool:
    """True when v lies in the rational span of `vectors`."""
    base = [list(w) for w in vectors]
    return rank(base) == rank(base + [list(v)])
