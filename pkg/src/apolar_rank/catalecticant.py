"""Catalecticant (Hankel) matrices of a form and their exact ranks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DegreeError, PreconditionError
from .polynomial import Polynomial, monomials, multinomial

__all__ = [
    "CatalecticantMatrix",
    "build",
    "rank",
    "catalecticant_rank",
    "gamma_member",
    "rank_sequence",
]


@dataclass(frozen=True)
class CatalecticantMatrix:
    """Matrix of ``p -> p . f*`` from ``S^k`` to ``(S^{d-k})*``.

    Rows are indexed by degree ``d-k`` monomials ``beta``, columns by degree
    ``k`` monomials ``alpha``; ``entries[i][j] = binom(d-k, beta) f_{alpha+beta}``
    with ``f_.`` the Bombieri coefficients.  Rescaling rows or columns does not
    change the rank, so ranks do not depend on this normalisation.
    """

    k: int
    degree: int
    nvars: int
    rows: tuple
    cols: tuple
    entries: tuple

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def rank(self) -> int:
        return linalg.rank([list(r) for r in self.entries]) if self.rows and self.cols else 0

    def kernel(self) -> list[Polynomial]:
        """Basis of ``(f^perp)^k`` as polynomials of degree ``k``."""
        vecs = linalg.kernel([list(r) for r in self.entries], len(self.cols))
        return [Polynomial(self.nvars, dict(zip(self.cols, v))) for v in vecs]

    def apply(self, p: Polynomial) -> dict:
        """``p . f*`` as a map ``beta -> (p . f*)(x^beta)``."""
        out = {}
        for i, beta in enumerate(self.rows):
            s = sum((self.entries[i][j] * p.coefficient(a) for j, a in enumerate(self.cols)),
                    Fraction(0))
            out[beta] = s / multinomial(beta)
        return out

    def pairing(self, p: Polynomial, q: Polynomial):
        """``<f, p q>`` read through the matrix."""
        img = self.apply(p)
        return sum((c * img[b] for b, c in q.terms.items()), Fraction(0))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "degree": self.degree,
            "rows": [list(b) for b in self.rows],
            "cols": [list(a) for a in self.cols],
            "entries": [[str(x) for x in r] for r in self.entries],
            "rank": self.rank(),
        }


def build(f: Polynomial, k: int) -> CatalecticantMatrix:
    d = f.require_form(nonzero=False)
    if f.is_zero():
        raise PreconditionError("catalecticant of the zero polynomial")
    if not 0 <= k <= d:
        raise DegreeError(f"order {k} outside 0..{d}")
    fb = f.bombieri()
    rows = monomials(f.nvars, d - k)
    cols = monomials(f.nvars, k)
    entries = []
    for beta in rows:
        w = multinomial(beta)
        entries.append(tuple(
            w * fb[s] if (s := tuple(x + y for x, y in zip(a, beta))) in fb else Fraction(0)
            for a in cols
        ))
    return CatalecticantMatrix(k, d, f.nvars, rows, cols, tuple(entries))


def rank(m: CatalecticantMatrix) -> int:
    return m.rank()


def rank_sequence(f: Polynomial) -> list[int]:
    """Ranks of all catalecticants, ``k = 0..d``; symmetric, so half are computed."""
    d = f.require_form()
    seq = [0] * (d + 1)
    for k in range(d // 2 + 1):
        # the smaller side gives the smaller matrix to eliminate
        seq[k] = seq[d - k] = build(f, k).rank()
    return seq


def catalecticant_rank(f: Polynomial) -> int:
    return max(rank_sequence(f))


def gamma_member(f: Polynomial, i: int, r: int) -> bool:
    """Is the order-``i`` catalecticant of rank at most ``r``?"""
    return build(f, i).rank() <= r
