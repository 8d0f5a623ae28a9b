"""Rank, border size and explicit decompositions of monomials.

The Waring decompositions use roots of unity and are checked with exact
cyclotomic arithmetic; the border families are checked numerically.
"""

from fractions import Fraction

from apolar_rank.catalecticant import catalecticant_rank
from apolar_rank.monomial import (monomial_border_family, monomial_border_size,
                                  monomial_rank, monomial_waring, verify)
from apolar_rank.polynomial import Polynomial

print(f"{'alpha':>12} {'r_H':>4} {'border':>6} {'rank':>5}  exact check")
for alpha in [(1, 2), (2, 2), (1, 1, 1), (1, 2, 2), (2, 2, 2), (1, 1, 1, 3)]:
    f = Polynomial.monomial(alpha)
    dec = monomial_waring(alpha)
    rep = verify(dec, mode="exact")
    print(f"{str(alpha):>12} {catalecticant_rank(f):>4} {monomial_border_size(alpha):>6} "
          f"{monomial_rank(alpha):>5}  {len(dec)} terms, residual {rep.residual}")

alpha = (1, 2, 2)
fam = monomial_border_family(alpha)
print(f"\nborder family for x^{alpha}: {fam.size} terms")
for eps in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
    rep = verify(fam.at(eps), mode="numeric", tol=10 * float(eps))
    print(f"  eps = {eps}: residual {rep.residual:.2e}")
