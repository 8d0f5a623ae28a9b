"""Dense univariate polynomials over Q (coefficient lists, low degree first)."""

from __future__ import annotations

from fractions import Fraction

__all__ = ["trim", "degree", "derivative", "divmod_poly", "gcd", "squarefree_decomposition",
           "is_squarefree"]


def trim(p):
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def derivative(p):
    return trim([k * c for k, c in enumerate(p)][1:])


def divmod_poly(a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                r[i + j] -= c * bj
    return trim(q), trim(r[: len(b) - 1])


def _monic(p):
    p = trim(p)
    return [c / p[-1] for c in p] if p else p


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return _monic(a)


def squarefree_decomposition(p) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: p = c * prod s_k^k with s_k square-free and coprime.

    Returns ``[(s_k, k), ...]`` for the non-constant factors.
    """
    p = _monic(p)
    if len(p) <= 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd(p, dp)
    b, _ = divmod_poly(p, a)
    c, _ = divmod_poly(dp, a)
    k = 1
    while degree(b) > 0:
        d = [x - y for x, y in _pad(c, derivative(b))]
        g = gcd(b, d)
        if degree(g) > 0:
            out.append((g, k))
        b, _ = divmod_poly(b, g)
        c, _ = divmod_poly(d, g)
        k += 1
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else Fraction(0), b[i] if i < len(b) else Fraction(0))
            for i in range(n)]


def is_squarefree(p) -> bool:
    p = trim(p)
    if len(p) <= 2:
        return bool(p)
    return degree(gcd(p, derivative(p))) == 0
