"""Exact integer helpers: primality, factoring, square-free decomposition.

Inputs stay at desk scale, but everything here remains exact for arbitrary
precision integers; no floating point is ever involved.
"""
from __future__ import annotations

from math import gcd, isqrt

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES: list[int] = []
for _n in range(2, 1000):
    if all(_n % _p for _p in _SMALL_PRIMES if _p * _p <= _n):
        _SMALL_PRIMES.append(_n)


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set; deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Some nontrivial factor of an odd composite n (Brent's cycle method)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        y, m = 2, 128
        g = q = r = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                k += m
                g = gcd(q, n)
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"factor search failed for {n}")


def factor(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("factor() wants a positive integer")
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.append(d)
        stack.append(m // d)
    return out


def squarefree_part(n: int) -> tuple[int, int]:
    """Write n = s*s*d with d square-free; returns (s, d).  Requires n >= 0."""
    if n < 0:
        raise ValueError("squarefree_part() wants a nonnegative integer")
    if n == 0:
        return 0, 1
    r = isqrt(n)
    if r * r == n:
        return r, 1
    s, d = 1, 1
    for p, e in factor(n).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d
