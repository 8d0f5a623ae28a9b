"""Truncated functionals, Hankel blocks and flat extensions.

Affine monomials are exponent tuples over ``x1..xn``.  A functional of
degree ``d`` comes from a form ``f`` by reading its Bombieri coefficients:
``L(x^b) = f_{(d - |b|, b)}``.  A flat extension is certified by a monomial
set ``B`` connected to 1 with invertible block ``H^{B,B}``; the matrices
``M_i = H0^-1 H^{B, x_i B}`` then represent multiplication by ``x_i`` and
``L~(p) = h^T p(M) e_1`` with ``h = (L(b))_b`` is the extension.  Commuting
``M_i`` together with agreement on the known moments is the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import linalg
from .errors import (ContainmentError, DegreeError, FlatExtensionError, NotConnectedError,
                     PreconditionError)
from .polynomial import Polynomial, compose, monomials_upto

__all__ = [
    "TruncatedFunctional",
    "MonomialSet",
    "FlatExtensionCertificate",
    "truncate",
    "hankel",
    "flat_test",
    "extend",
    "greedy_basis",
]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _unit(n, i):
    return tuple(int(j == i) for j in range(n))


class TruncatedFunctional:
    """Values on affine monomials of degree at most ``bound``.

    ``extension``, if given, supplies values beyond ``bound`` (it must agree
    with ``values`` below the bound; it is only consulted above it).
    """

    __slots__ = ("nvars", "bound", "values", "extension", "_cache")

    def __init__(self, nvars: int, bound: int, values: dict,
                 extension: Callable[[tuple], Fraction] | None = None):
        if bound < 0:
            raise PreconditionError("bound must be non-negative")
        self.nvars = nvars
        self.bound = bound
        self.values = {tuple(k): v for k, v in values.items() if v}
        self.extension = extension
        self._cache: dict = {}

    def __call__(self, beta: Sequence[int]):
        beta = tuple(beta)
        if len(beta) != self.nvars:
            raise ValueError("monomial has the wrong number of variables")
        if sum(beta) <= self.bound:
            return self.values.get(beta, Fraction(0))
        if self.extension is None:
            raise DegreeError(f"monomial {beta} of degree {sum(beta)} beyond bound {self.bound}")
        if beta not in self._cache:
            self._cache[beta] = self.extension(beta)
        return self._cache[beta]

    def with_extension(self, fn: Callable[[tuple], Fraction]) -> "TruncatedFunctional":
        return TruncatedFunctional(self.nvars, self.bound, self.values, fn)

    def apply(self, p: Polynomial):
        if p.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        return sum((c * self(e) for e, c in p.terms.items()), Fraction(0))

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "bound": self.bound,
                "values": {",".join(map(str, k)): str(v) for k, v in sorted(self.values.items())}}


def truncate(f: Polynomial, g: Sequence[Sequence] | None = None) -> TruncatedFunctional:
    """Dehomogenized dual of ``f o g`` (``(f o g)(x) = f(g x)``) on degree ``<= d``."""
    d = f.require_form()
    n = f.nvars
    if g is not None:
        if len(g) != n or linalg.rank(g) < n:
            raise PreconditionError("coordinate change must be invertible")
        f = compose(f, g)
    fb = f.bombieri()
    values = {}
    for a, v in fb.items():
        values[a[1:]] = v
    return TruncatedFunctional(n - 1, d, values)


@dataclass(frozen=True)
class MonomialSet:
    monomials: tuple

    def __post_init__(self):
        object.__setattr__(self, "monomials", tuple(tuple(m) for m in self.monomials))

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __contains__(self, m):
        return tuple(m) in set(self.monomials)

    @property
    def nvars(self) -> int:
        return len(self.monomials[0]) if self.monomials else 0

    @property
    def max_degree(self) -> int:
        return max((sum(m) for m in self.monomials), default=-1)

    def is_connected_to_one(self) -> bool:
        s = set(self.monomials)
        if not s or (0,) * self.nvars not in s:
            return False
        for m in s:
            if sum(m) and not any(m[i] and (m[:i] + (m[i] - 1,) + m[i + 1:]) in s
                                  for i in range(len(m))):
                return False
        return True

    def plus(self) -> "MonomialSet":
        """``B+ = B u x_1 B u ... u x_n B`` in graded order."""
        n = self.nvars
        out = set(self.monomials)
        for m in self.monomials:
            for i in range(n):
                out.add(_add(m, _unit(n, i)))
        return MonomialSet(tuple(sorted(out, key=lambda e: (sum(e), [-x for x in e]))))

    def products(self, other: "MonomialSet") -> set:
        return {_add(a, b) for a in self.monomials for b in other.monomials}

    def to_json(self) -> list:
        return [list(m) for m in self.monomials]


def _as_set(b) -> MonomialSet:
    return b if isinstance(b, MonomialSet) else MonomialSet(tuple(b))


def hankel(lam: TruncatedFunctional, B, Bp) -> list[list]:
    """Rows indexed by ``B'``, columns by ``B``: entry ``L(b' b)``."""
    B, Bp = _as_set(B), _as_set(Bp)
    return [[lam(_add(bp, b)) for b in B] for bp in Bp]


def flat_test(lam: TruncatedFunctional, B, Bp, M, Mp) -> bool:
    """Do ``H^{B',B}`` and ``H^{M',M}`` both have rank ``|B| = |B'|``?"""
    B, Bp, M, Mp = map(_as_set, (B, Bp, M, Mp))
    for name, s in (("B", B), ("B'", Bp)):
        if not s.is_connected_to_one():
            raise NotConnectedError(f"{name} is not connected to 1")
    if not set(B) <= set(M) or not set(Bp) <= set(Mp):
        raise ContainmentError("B must lie in M and B' in M'")
    if not B.plus().products(Bp.plus()) <= M.products(Mp):
        raise ContainmentError("B+ . B'+ is not covered by M . M'")
    if len(B) != len(Bp):
        return False
    r = len(B)
    if linalg.rank(hankel(lam, B, Bp)) != r:
        return False
    return linalg.rank(hankel(lam, M, Mp)) == r


@dataclass
class FlatExtensionCertificate:
    """Data determining a rank-``r`` extension and the checks it passed."""

    rank: int
    basis: MonomialSet
    dual_basis: MonomialSet
    hankel_block: list
    hankel_rank: int
    mult: list
    moments: list
    check_degree: int
    commutator_residual: Fraction = Fraction(0)
    coords: list | None = None
    method: str = "known-moments"
    extra: dict = field(default_factory=dict)

    @property
    def nvars(self) -> int:
        return self.basis.nvars

    def _unit_index(self):
        return self.basis.monomials.index((0,) * self.nvars)

    def reduce(self, beta) -> list:
        """Coordinates of ``x^beta`` in the quotient basis: ``beta(M) e_1``."""
        v = [Fraction(0)] * self.rank
        v[self._unit_index()] = Fraction(1)
        for i, k in enumerate(beta):
            for _ in range(k):
                v = _matvec(self.mult[i], v)
        return v

    def functional(self, beta) -> Fraction:
        return sum((h * c for h, c in zip(self.moments, self.reduce(beta))), Fraction(0))

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "method": self.method,
            "basis": self.basis.to_json(),
            "dual_basis": self.dual_basis.to_json(),
            "hankel_rank": self.hankel_rank,
            "hankel_block": [[str(x) for x in row] for row in self.hankel_block],
            "multiplication": [[[str(x) for x in row] for row in m] for m in self.mult],
            "commutator_residual": str(self.commutator_residual),
            "check_degree": self.check_degree,
            "coords": [[str(x) for x in row] for row in self.coords] if self.coords else None,
            **self.extra,
        }


def _matvec(m, v):
    return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in m]


def _max_commutator(mult) -> Fraction:
    worst = Fraction(0)
    for i in range(len(mult)):
        for j in range(i):
            a = linalg.matmul(mult[i], mult[j])
            b = linalg.matmul(mult[j], mult[i])
            for ra, rb in zip(a, b):
                for x, y in zip(ra, rb):
                    worst = max(worst, abs(x - y))
    return worst


def extend(lam: TruncatedFunctional, B, Bp=None, check_degree: int | None = None,
           coords=None, method: str = "known-moments") -> FlatExtensionCertificate:
    """Multiplication matrices on ``B`` and the checks that make them a certificate.

    Raises :class:`FlatExtensionError` when the principal block is singular,
    the matrices do not commute or the induced extension disagrees with
    ``lam`` on some monomial of degree ``<= check_degree`` (default: the bound).
    """
    B = _as_set(B)
    Bp = B if Bp is None else _as_set(Bp)
    for name, s in (("B", B), ("B'", Bp)):
        if not s.is_connected_to_one():
            raise NotConnectedError(f"{name} is not connected to 1")
    r = len(B)
    if len(Bp) != r:
        raise FlatExtensionError("B and B' must have the same size")
    h0 = hankel(lam, B, Bp)
    if linalg.rank(h0) < r:
        raise FlatExtensionError("singular principal Hankel block")
    h0inv = linalg.inverse(h0)
    n = lam.nvars
    mult = []
    for i in range(n):
        e = _unit(n, i)
        hi = [[lam(_add(_add(bp, b), e)) for b in B] for bp in Bp]
        mult.append(linalg.matmul(h0inv, hi))
    comm = _max_commutator(mult)
    if comm:
        raise FlatExtensionError(f"multiplication matrices do not commute (max entry {comm})")
    moments = [lam(b) for b in B]
    cert = FlatExtensionCertificate(r, B, Bp, h0, r, mult, moments,
                                    lam.bound if check_degree is None else check_degree,
                                    comm, coords, method)
    _check_agreement(cert, lam)
    return cert


def _check_agreement(cert: FlatExtensionCertificate, lam: TruncatedFunctional):
    n = cert.nvars
    vecs: dict = {}
    one = (0,) * n
    v = [Fraction(0)] * cert.rank
    v[cert._unit_index()] = Fraction(1)
    vecs[one] = v
    for beta in monomials_upto(n, cert.check_degree):
        if beta == one:
            vec = v
        else:
            i = next(j for j, k in enumerate(beta) if k)
            prev = beta[:i] + (beta[i] - 1,) + beta[i + 1:]
            vec = _matvec(cert.mult[i], vecs[prev])
            vecs[beta] = vec
        val = sum((h * c for h, c in zip(cert.moments, vec)), Fraction(0))
        if val != lam(beta):
            raise FlatExtensionError(f"extension disagrees with the functional at {beta}")


def greedy_basis(lam: TruncatedFunctional, max_degree: int, limit: int | None = None,
                 candidates: Iterable[tuple] | None = None) -> MonomialSet:
    """Grow ``B`` in graded order keeping ``H^{B,B}`` invertible and ``B`` connected to 1.

    A monomial is eligible once one of its divisors by a single variable is
    already in ``B``.  Stops at ``limit`` elements if given.
    """
    n = lam.nvars
    one = (0,) * n
    if not lam(one):
        return MonomialSet(())
    chosen = [one]
    inv = [[1 / Fraction(lam(one))]]
    pool = candidates if candidates is not None else monomials_upto(n, max_degree)
    members = {one}
    for m in pool:
        if limit is not None and len(chosen) >= limit:
            break
        if m in members or sum(m) > max_degree:
            continue
        if not any(m[i] and (m[:i] + (m[i] - 1,) + m[i + 1:]) in members for i in range(n)):
            continue
        # bordering: H' = [[H, u], [u^T, c]] is invertible iff c - u^T H^-1 u != 0
        u = [lam(_add(b, m)) for b in chosen]
        c = lam(_add(m, m))
        w = _matvec(inv, u)
        s = c - sum((a * b for a, b in zip(u, w)), Fraction(0))
        if not s:
            continue
        k = len(chosen)
        new = [[inv[i][j] + w[i] * w[j] / s for j in range(k)] + [-w[i] / s] for i in range(k)]
        new.append([-w[j] / s for j in range(k)] + [1 / s])
        inv = new
        chosen.append(m)
        members.add(m)
    return MonomialSet(tuple(chosen))
