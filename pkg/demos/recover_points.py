"""Recover the points of a sum of powers, then a scheme with double points.

A flat extension of the moment matrix gives commuting multiplication
matrices; their joint eigenvectors are the points.
"""

import numpy as np

from apolar_rank.monomial import verify
from apolar_rank.parser import parse
from apolar_rank.recovery import normalize_point, verify_generalized
from apolar_rank.search import extension_rank_search

f = parse("(x0 + x1 - x2)^6 + 2*(x0 - 3*x1 + x2)^6 - (2*x0 + x2)^6 + (x1 + x2)^6", 2)
res = extension_rank_search(f, 8)
print("certified rank", res.r, "via", res.cert.method)
for p in res.dec.projective_points():
    print("  point", np.round(normalize_point(p).real, 6))
waring = res.dec.waring(f)
rep = verify(waring, mode="numeric", tol=1e-6 * max(abs(float(c)) for c in f.terms.values()))
print(f"  as {len(waring)} sixth powers: verified {rep.ok}, residual {rep.residual:.1e}")

g = parse("x0^3*x1 + x1^3*x2", 2)
res = extension_rank_search(g, 8)
print("\nx0^3*x1 + x1^3*x2: scheme of length", res.r, "catalecticant rank", res.r_H)
print("  multiplicities", res.dec.multiplicities)
rep = verify_generalized(res.dec, g)
print("  reproduces every moment:", rep.ok, f"(residual {rep.residual:.1e})")
print("  search log:", *res.log, sep="\n    ")
