"""Fraction-free exact linear algebra over the rationals.

Matrices are lists of rows.  Entries may be ints or Fractions; every routine
clears denominators row by row (which preserves rank and right kernel) and
then runs Bareiss elimination on Python integers.  Pivots are chosen per
column as the candidate with the smallest bit length.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "rank",
    "kernel",
    "solve",
    "inverse",
    "matmul",
    "transpose",
    "charpoly",
    "is_zero_matrix",
]


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = math.lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _bareiss(m: list[list[int]], ncols: int | None = None):
    """In-place fraction-free row echelon form.

    Returns ``(pivot_columns, m)`` where the first ``len(pivot_columns)`` rows of
    ``m`` are the echelon rows.  Only the first ``ncols`` columns are used to
    pick pivots (the rest ride along, e.g. right-hand sides).
    """
    nrows = len(m)
    if nrows == 0:
        return [], m
    width = len(m[0])
    if ncols is None:
        ncols = width
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        best = None
        for i in range(r, nrows):
            v = m[i][c]
            if v:
                bl = abs(v).bit_length()
                if best is None or bl < best[0]:
                    best = (bl, i)
        if best is None:
            continue
        i = best[1]
        if i != r:
            m[r], m[i] = m[i], m[r]
        piv = m[r][c]
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[c]
            if a:
                for j in range(c + 1, width):
                    row[j] = (piv * row[j] - a * prow[j]) // prev
            else:
                for j in range(c + 1, width):
                    row[j] = (piv * row[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, m


def rank(rows) -> int:
    if not rows or not rows[0]:
        return 0
    pivots, _ = _bareiss(_integer_rows(rows))
    return len(pivots)


def _back_substitute(ech, pivots, ncols, free_values):
    """Solve echelon rows for pivot variables given values of free variables."""
    x = [Fraction(0)] * ncols
    for c, v in free_values.items():
        x[c] = Fraction(v)
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        row = ech[k]
        s = Fraction(row[ncols]) if len(row) > ncols else Fraction(0)
        for j in range(c + 1, ncols):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[c] = s / row[c]
    return x


def kernel(rows, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column.

    Each basis vector has a 1 in its free column and 0 in the other free
    columns, so the basis is in reduced form with respect to the pivots.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    pivots, ech = _bareiss(_integer_rows(rows))
    ech = [row[:ncols] for row in ech[: len(pivots)]]
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        vals = {c: 0 for c in free}
        vals[fc] = 1
        basis.append(_back_substitute(ech, pivots, ncols, vals))
    return basis


def solve(a, b):
    """Return one solution ``x`` of ``a x = b`` or ``None`` if inconsistent.

    ``b`` is a vector.  Free variables are set to zero.
    """
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    pivots, ech = _bareiss(_integer_rows(aug), ncols)
    rk = len(pivots)
    for row in ech[rk:]:
        if row[ncols]:
            return None
    free = {c: 0 for c in range(ncols) if c not in set(pivots)}
    return _back_substitute(ech[:rk], pivots, ncols, free)


def inverse(a):
    n = len(a)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solve(a, e)
        if x is None:
            raise ZeroDivisionError("singular matrix")
        cols.append(x)
    if rank(a) < n:
        raise ZeroDivisionError("singular matrix")
    return transpose(cols)


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


def charpoly(a) -> list[Fraction]:
    """Characteristic polynomial det(tI - a), low degree first (Faddeev-LeVerrier)."""
    n = len(a)
    a = [[Fraction(x) for x in row] for row in a]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # m <- a*m + c_{n-k+1} I
        m = matmul(a, m)
        for i in range(n):
            m[i][i] += coeffs[n - k + 1]
        am = matmul(a, m)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return coeffs
