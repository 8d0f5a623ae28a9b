"""Graded pieces of the apolar ideal, Hilbert functions and colon spaces.

Everything here is exact: kernels come from fraction-free elimination of
catalecticant-type systems assembled one degree at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .catalecticant import build, rank_sequence
from .errors import DegreeError, PreconditionError
from .polynomial import PointDiffTerm, Polynomial, monomials

__all__ = [
    "GradedComponent",
    "HilbertVector",
    "apolar_component",
    "hilbert_function",
    "is_apolar",
    "colon_with_maximal",
    "inverse_system_dimension",
    "derivative_closure",
]


@dataclass(frozen=True)
class GradedComponent:
    """A graded piece of an ideal given by a linearly independent basis."""

    degree: int
    nvars: int
    basis: tuple
    # number of multiplications by the maximal ideal used to certify membership
    steps: int = field(default=0, compare=False)

    @property
    def ambient_dimension(self) -> int:
        return math.comb(self.nvars - 1 + self.degree, self.degree) if self.degree >= 0 else 0

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, p: Polynomial) -> bool:
        """Membership of a degree-matching form in the span of the basis."""
        if p.is_zero():
            return True
        mons = monomials(self.nvars, self.degree)
        rows = [[b.coefficient(m) for m in mons] for b in self.basis]
        return linalg.rank(rows + [[p.coefficient(m) for m in mons]]) == len(rows)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dimension": self.dimension,
            "ambient_dimension": self.ambient_dimension,
            "basis": [str(b) for b in self.basis],
        }


@dataclass(frozen=True)
class HilbertVector:
    values: tuple

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if isinstance(other, (list, tuple)):
            return list(self.values) == list(other)
        if isinstance(other, HilbertVector):
            return self.values == other.values
        return NotImplemented

    def __hash__(self):
        return hash(self.values)

    def is_symmetric(self) -> bool:
        return self.values == self.values[::-1]

    def to_json(self) -> list[int]:
        return list(self.values)


def apolar_component(f: Polynomial, k: int) -> GradedComponent:
    """``(f^perp)^k``: kernel of the order-``k`` catalecticant.

    Forms of degree above ``d`` annihilate ``f`` trivially, so for ``k > d``
    the whole of ``S^k`` is returned.
    """
    d = f.require_form()
    if k < 0:
        raise DegreeError("negative degree")
    if k > d:
        return GradedComponent(k, f.nvars, tuple(
            Polynomial.monomial(m) for m in monomials(f.nvars, k)))
    return GradedComponent(k, f.nvars, tuple(build(f, k).kernel()))


def hilbert_function(f: Polynomial) -> HilbertVector:
    """``H(k) = dim S^k - dim (f^perp)^k`` for ``k = 0..d``."""
    return HilbertVector(tuple(rank_sequence(f)))


def is_apolar(generators: Sequence[Polynomial], f: Polynomial) -> bool:
    """Does the ideal generated by ``generators`` lie inside ``f^perp``?

    Checking ``<f, g h> = 0`` for every degree-complementary monomial ``h`` is
    enough: ``I^d`` annihilating ``f*`` already forces ``I`` into ``f^perp``.
    """
    d = f.require_form()
    fb = f.bombieri()
    for g in generators:
        if g.is_zero():
            continue
        e = g.require_form()
        if e > d:
            raise DegreeError(f"generator of degree {e} exceeds {d}")
        for h in monomials(f.nvars, d - e):
            s = Fraction(0)
            for a, c in g.terms.items():
                v = fb.get(tuple(x + y for x, y in zip(a, h)))
                if v:
                    s += c * v
            if s:
                return False
    return True


def _span_rows(gens, nvars, degree):
    """Coefficient vectors spanning ``S^{degree - deg g} * gens`` (``gens`` share one degree)."""
    mons = monomials(nvars, degree)
    idx = {m: i for i, m in enumerate(mons)}
    if not gens:
        return mons, idx, []
    e = sum(next(iter(gens[0].terms)))
    rows = []
    for g in gens:
        for h in monomials(nvars, degree - e):
            row = [Fraction(0)] * len(mons)
            for a, c in g.terms.items():
                row[idx[tuple(x + y for x, y in zip(a, h))]] += c
            rows.append(row)
    return mons, idx, rows


def colon_with_maximal(f: Polynomial, k: int, saturate: bool = True,
                       max_steps: int | None = None) -> GradedComponent:
    """Degree ``k-1`` forms ``g`` with ``g * m^e`` inside the ideal ``J`` generated by ``(f^perp)^k``.

    With ``saturate=False`` only ``e = 1`` is used, i.e. ``x_i g`` in
    ``(f^perp)^k`` for every variable.  Otherwise ``e`` runs up to
    ``max_steps`` (default ``d + 1``), which approximates the saturation
    ``(J : m^inf)`` from below.  The spaces grow with ``e``; the smallest
    exponent reaching the final space is recorded in ``steps``.
    """
    d = f.require_form()
    if not 1 <= k <= d:
        raise DegreeError(f"colon degree {k} outside 1..{d}")
    n = f.nvars
    gens = list(apolar_component(f, k).basis)
    if max_steps is None:
        max_steps = 1 if not saturate else d + 1
    target = monomials(n, k - 1)
    best: list = []
    best_e = 1
    for e in range(1, max_steps + 1):
        mons, idx, rows = _span_rows(gens, n, k - 1 + e)
        # functionals vanishing on J_{k-1+e}
        duals = linalg.kernel(rows, len(mons)) if rows else [
            [Fraction(int(i == j)) for j in range(len(mons))] for i in range(len(mons))]
        cond = []
        for w in duals:
            for gam in monomials(n, e):
                cond.append([w[idx[tuple(x + y for x, y in zip(a, gam))]] for a in target])
        sol = linalg.kernel(cond, len(target)) if cond else [
            [Fraction(int(i == j)) for j in range(len(target))] for i in range(len(target))]
        if len(sol) > len(best):
            best, best_e = sol, e
        if len(best) == len(target):
            break
    basis = tuple(Polynomial(n, dict(zip(target, v))) for v in best)
    return GradedComponent(k - 1, n, basis, steps=best_e if best else 0)


def derivative_closure(phi: Polynomial) -> list[Polynomial]:
    """``phi`` together with all its iterated partial derivatives (nonzero ones)."""
    seen = {phi}
    frontier = [phi]
    while frontier:
        nxt = []
        for p in frontier:
            for i in range(p.nvars):
                q = p.derivative(i)
                if not q.is_zero() and q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return list(seen)


def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction))


def _span_dimension(polys: list[Polynomial], tol: float) -> int:
    keys = sorted({e for p in polys for e in p.terms})
    if not keys:
        return 0
    coeffs = [[p.coefficient(e) for e in keys] for p in polys]
    if all(_is_exact(c) for row in coeffs for c in row):
        return linalg.rank(coeffs)
    a = np.array([[complex(c) for c in row] for row in coeffs], dtype=complex)
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


def inverse_system_dimension(terms: Sequence[PointDiffTerm], tol: float = 1e-9) -> int:
    """Sum over points of the dimension of the span of the derivatives of ``phi``."""
    pts = [t.point for t in terms]
    for i in range(len(pts)):
        for j in range(i):
            if _same_point(pts[i], pts[j], tol):
                raise PreconditionError(f"repeated point {pts[i]}")
    return sum(_span_dimension(derivative_closure(t.phi), tol) for t in terms)


def _same_point(p, q, tol):
    if all(_is_exact(x) for x in p) and all(_is_exact(x) for x in q):
        return tuple(Fraction(x) for x in p) == tuple(Fraction(x) for x in q)
    return max(abs(complex(a) - complex(b)) for a, b in zip(p, q)) <= tol
