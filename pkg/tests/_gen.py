"""Shared generators for the test suite."""

import random
from fractions import Fraction

from apolar_rank import linalg
from apolar_rank.polynomial import Polynomial, monomials, power_of_form


def distinct_points(rng: random.Random, r: int, nvars: int, bound: int = 5):
    """``r`` rational points of P^(nvars-1), pairwise non-proportional, first coordinate nonzero."""
    pts = []
    while len(pts) < r:
        p = tuple([Fraction(rng.randint(1, bound), rng.randint(1, 3))]
                  + [Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(nvars - 1)])
        if all(linalg.rank([list(p), list(q)]) == 2 for q in pts):
            pts.append(p)
    return pts


def power_sum(points, d, weights=None):
    f = Polynomial.zero(len(points[0]))
    for i, p in enumerate(points):
        w = 1 if weights is None else weights[i]
        f = f + power_of_form(p, d).scale(w)
    return f


def random_form(rng: random.Random, nvars: int, d: int, density: float = 0.6, bound: int = 5):
    while True:
        terms = {m: Fraction(rng.randint(-bound, bound)) for m in monomials(nvars, d)
                 if rng.random() < density}
        f = Polynomial(nvars, terms)
        if not f.is_zero():
            return f
