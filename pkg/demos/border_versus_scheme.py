"""A cubic in five variables whose border rank is smaller than any apolar scheme.

Run with ``python demos/border_versus_scheme.py``.
"""

from fractions import Fraction

from apolar_rank.apolarity import colon_with_maximal, hilbert_function
from apolar_rank.hierarchy import scheme_length_lower_bound
from apolar_rank.monomial import SEPARATING_CUBIC, separating_cubic_family, verify
from apolar_rank.parser import parse

f = parse(SEPARATING_CUBIC, 4)
print("f =", f)
print("Hilbert function of the apolar algebra:", list(hilbert_function(f)))

# quadrics of the apolar ideal, saturated by the maximal ideal, land in degree one
colon = colon_with_maximal(f, 2)
print(f"colon space after {colon.steps} steps:", ", ".join(map(str, colon.basis)))

bound = scheme_length_lower_bound(f, 5)
print("scheme length >=", bound.bound, f"({bound.reason})")

# yet five cubes of linear forms come arbitrarily close
for eps in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
    dec = separating_cubic_family(eps)
    rep = verify(dec, mode="numeric", tol=10 * float(eps))
    print(f"eps = {eps}: {len(dec)} cubes, distance to f {rep.residual:.2e}")
