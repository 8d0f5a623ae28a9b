"""Upper bounds on the flat-extension rank by exhibiting certificates.

Three ways to produce a candidate extension, tried in order:

``known-moments``
    In random coordinates pick ``B`` inside the degrees where every entry of
    ``H^{B, x_i B}`` is a known moment; succeed if the multiplication matrices
    commute and reproduce every moment of degree ``<= d``.
``kernel-propagation`` (binary forms)
    Take a random element ``g`` of the lowest nonzero apolar component and
    define the unknown moments by ``L~(g t^j) = 0``.
``support``
    Attach each monomial of ``f`` to one of its variables; the monomials
    attached to ``x_p`` give a differential operator at the coordinate point
    ``e_p``.  The moments of that sum of local functionals are computed in a
    random chart by truncated power series.

Every candidate goes through :func:`~apolar_rank.flat.extend`, so a result is
always an exact certificate; failure to find one is reported as inconclusive.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import linalg
from .apolarity import derivative_closure, _span_dimension
from .catalecticant import catalecticant_rank
from .errors import ApolarError, InconsistencyError, PreconditionError
from .flat import (FlatExtensionCertificate, MonomialSet, extend, flat_test, greedy_basis,
                   truncate)
from .polynomial import Polynomial, monomials_upto
from .recovery import GeneralizedDecomposition, recover

__all__ = [
    "SearchResult",
    "extension_rank_search",
    "STRATEGIES",
    "random_coords",
    "support_decomposition",
    "RETRIES",
]

RETRIES = 8
MAX_ASSIGNMENTS = 4096


def random_coords(rng: random.Random, size: int, bound: int = 10) -> list[list[int]]:
    while True:
        g = [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
        if linalg.rank(g) == size:
            return g


@dataclass
class SearchResult:
    r: int | None
    r_H: int
    cert: FlatExtensionCertificate | None = None
    dec: GeneralizedDecomposition | None = None
    log: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "certified" if self.r is not None else "inconclusive"

    def to_json(self, with_witness: bool = True) -> dict:
        out = {"status": self.status, "r": self.r, "r_H": self.r_H,
               "method": self.cert.method if self.cert else None, "log": list(self.log)}
        if with_witness:
            out["certificate"] = self.cert.to_json() if self.cert else None
            out["decomposition"] = self.dec.to_json() if self.dec else None
        return out


# -- known moments --------------------------------------------------------------

def _try_known(f: Polynomial, g) -> FlatExtensionCertificate:
    d = f.degree
    lam = truncate(f, g)
    basis = greedy_basis(lam, (d - 1) // 2)
    if not len(basis):
        raise PreconditionError("chart misses the constant moment")
    return extend(lam, basis, coords=g, method="known-moments")


# -- kernel propagation (binary forms) ------------------------------------------

def _try_binary(f: Polynomial, g, rng: random.Random) -> FlatExtensionCertificate:
    d = f.degree
    lam = truncate(f, g)
    for k in range(1, d + 2):
        rows = [[lam((i + j,)) for j in range(k + 1)] for i in range(d - k + 1)]
        ker = linalg.kernel(rows, k + 1) if rows else [
            [Fraction(int(i == j)) for j in range(k + 1)] for i in range(k + 1)]
        if ker:
            break
    coeffs = [Fraction(0)] * (k + 1)
    for v in ker:
        c = rng.randint(1, 9) * rng.choice((-1, 1))
        coeffs = [a + c * b for a, b in zip(coeffs, v)]
    if not coeffs[k]:
        raise PreconditionError("kernel element has a vanishing leading coefficient")
    lead = coeffs[k]

    memo: dict = {}

    def moment(m: int):
        if m <= d:
            return lam((m,))
        if m not in memo:
            memo[m] = -sum((coeffs[j] * moment(m - k + j) for j in range(k)), Fraction(0)) / lead
        return memo[m]

    ext = lam.with_extension(lambda beta: moment(beta[0]))
    basis = MonomialSet(tuple((j,) for j in range(k)))
    plus = basis.plus()
    if not flat_test(ext, basis, basis, plus, plus):
        raise PreconditionError("propagated extension is not flat")
    cert = extend(ext, basis, coords=g, check_degree=d, method="kernel-propagation")
    cert.extra["generator"] = [str(c) for c in coeffs]
    return cert


# -- support strategy -------------------------------------------------------------

@dataclass
class SupportDecomposition:
    """Differential operators ``phi_p`` at coordinate points ``e_p``.

    ``phi_p`` lives in the variables other than ``x_p`` (in their original
    order) and acts in the chart ``x_p = 1``.
    """

    degree: int
    nvars: int
    ops: dict
    size: int

    def on_form_monomial(self, alpha) -> Fraction:
        total = Fraction(0)
        for p, phi in self.ops.items():
            rest = alpha[:p] + alpha[p + 1:]
            c = phi.terms.get(rest)
            if c:
                total += c * math.prod(math.factorial(a) for a in rest)
        return total

    def to_json(self) -> dict:
        return {"size": self.size,
                "operators": [{"pivot": p, "phi": str(phi)} for p, phi in sorted(self.ops.items())]}


def _ops_for(f: Polynomial, assignment) -> dict:
    d = f.degree
    ops: dict = {}
    for (alpha, c), p in zip(sorted(f.terms.items()), assignment):
        rest = alpha[:p] + alpha[p + 1:]
        ops.setdefault(p, {})
        ops[p][rest] = ops[p].get(rest, 0) + c * Fraction(math.factorial(alpha[p]),
                                                         math.factorial(d))
    return {p: Polynomial(f.nvars - 1, t) for p, t in ops.items()}


def support_decomposition(f: Polynomial) -> SupportDecomposition:
    """Cheapest assignment of monomials to pivot variables.

    All assignments are scored when there are at most ``MAX_ASSIGNMENTS``;
    otherwise each monomial goes to its largest exponent.
    """
    d = f.require_form()
    items = sorted(f.terms.items())
    choices = [[i for i, a in enumerate(alpha) if a] for alpha, _ in items]
    total = math.prod(len(c) for c in choices)
    if total <= MAX_ASSIGNMENTS:
        candidates = product(*choices)
    else:
        candidates = [tuple(max(ch, key=lambda i: (alpha[i], -i))
                            for ch, (alpha, _) in zip(choices, items))]
    cache: dict = {}
    best = None
    for assignment in candidates:
        ops = _ops_for(f, assignment)
        size = 0
        for p, phi in ops.items():
            key = (p, phi)
            if key not in cache:
                cache[key] = _span_dimension(derivative_closure(phi), 0.0) if not phi.is_zero() else 0
            size += cache[key]
        ops = {p: phi for p, phi in ops.items() if not phi.is_zero()}
        if best is None or size < best.size:
            best = SupportDecomposition(d, f.nvars, ops, size)
    return best


def _series_mul(a: dict, b: dict, order: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        da = sum(ea)
        for eb, cb in b.items():
            if da + sum(eb) > order:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _series_inverse(a: dict, nloc: int, order: int) -> dict:
    zero = (0,) * nloc
    c0 = a[zero]
    rest = {e: -c / c0 for e, c in a.items() if e != zero}
    # 1/a = (1/c0) * sum_k rest^k
    out = {zero: Fraction(1)}
    term = {zero: Fraction(1)}
    for _ in range(order):
        term = _series_mul(term, rest, order)
        if not term:
            break
        for e, c in term.items():
            out[e] = out.get(e, 0) + c
    return {e: c / c0 for e, c in out.items() if c}


class _LocalMoments:
    """Moments in the chart of ``g`` of the functional ``sum_p 1_{e_p} o phi_p``."""

    def __init__(self, sup: SupportDecomposition, g):
        self.sup = sup
        self.g = g
        self.n1 = sup.nvars
        self.d = sup.degree
        self.local = {}
        for p, phi in sup.ops.items():
            if not g[p][0]:
                raise PreconditionError("chart form vanishes at a support point")
            order = phi.degree
            nloc = self.n1 - 1
            lins = []
            for i in range(self.n1):
                s = {(0,) * nloc: Fraction(g[p][i])}
                for j, q in enumerate(k for k in range(self.n1) if k != p):
                    if g[q][i] and order > 0:
                        e = tuple(int(t == j) for t in range(nloc))
                        s[e] = Fraction(g[q][i])
                s = {e: c for e, c in s.items() if c}
                lins.append(s)
            inv0 = _series_inverse(lins[0], nloc, order)
            weights = {e: c * math.prod(math.factorial(k) for k in e) for e, c in phi.terms.items()}
            self.local[p] = (order, nloc, lins, inv0, weights, {})

    def _power(self, p, i, k):
        order, nloc, lins, inv0, _, memo = self.local[p]
        key = (i, k)
        if key in memo:
            return memo[key]
        if k == 0:
            out = {(0,) * nloc: Fraction(1)}
        elif k < 0:
            out = _series_mul(self._power(p, i, k + 1), inv0, order)
        else:
            out = _series_mul(self._power(p, i, k - 1), lins[i], order)
        memo[key] = out
        return out

    def __call__(self, beta) -> Fraction:
        total = Fraction(0)
        exps = (self.d - sum(beta),) + tuple(beta)
        for p in self.local:
            order, nloc, _, _, weights, _ = self.local[p]
            s = {(0,) * nloc: Fraction(1)}
            for i, k in enumerate(exps):
                if k:
                    s = _series_mul(s, self._power(p, i, k), order)
            total += sum((w * s.get(e, 0) for e, w in weights.items()), Fraction(0))
        return total


def _try_support(f: Polynomial, sup: SupportDecomposition, g) -> FlatExtensionCertificate:
    d = f.degree
    moments = _LocalMoments(sup, g)
    lam = truncate(f, g).with_extension(moments)
    basis = greedy_basis(lam, max(sup.size - 1, 0), limit=sup.size)
    if len(basis) != sup.size:
        raise PreconditionError(f"greedy basis stopped at {len(basis)} of {sup.size}")
    plus = basis.plus()
    if not flat_test(lam, basis, basis, plus, plus):
        raise PreconditionError("support extension failed the flat test")
    cert = extend(lam, basis, coords=g, check_degree=d, method="support")
    cert.extra["support"] = sup.to_json()
    # the series must reproduce the known moments exactly
    for beta in monomials_upto(f.nvars - 1, d):
        if moments(beta) != lam(beta):
            raise InconsistencyError(f"support functional disagrees with f at {beta}")
    return cert


# -- driver -------------------------------------------------------------------

STRATEGIES = ("known-moments", "kernel-propagation", "support")


def extension_rank_search(f: Polynomial, r_max: int, seed: int = 0,
                          retries: int = RETRIES, recover_points: bool = True,
                          strategies=STRATEGIES) -> SearchResult:
    """Smallest certified flat-extension rank ``<= r_max`` (upper bound on the scheme length).

    ``support`` reads the monomials of ``f`` and so depends on the coordinates;
    the other two strategies only see ``f`` through random charts.
    """
    if r_max < 1:
        raise PreconditionError("r_max must be at least 1")
    unknown = set(strategies) - set(STRATEGIES)
    if unknown:
        raise PreconditionError(f"unknown strategies {sorted(unknown)}")
    f.require_form()
    r_h = catalecticant_rank(f)
    rng = random.Random(seed)
    coords = [random_coords(rng, f.nvars) for _ in range(retries)]
    res = SearchResult(None, r_h)
    best: FlatExtensionCertificate | None = None

    def consider(cert):
        nonlocal best
        if cert.rank < r_h:
            raise InconsistencyError(f"certificate of rank {cert.rank} below catalecticant rank {r_h}")
        if best is None or cert.rank < best.rank:
            best = cert

    for j, g in enumerate(coords if "known-moments" in strategies else ()):
        try:
            consider(_try_known(f, g))
            res.log.append(f"known-moments: rank {best.rank} in chart {j}")
            break
        except ApolarError as exc:
            res.log.append(f"known-moments chart {j}: {exc}")
    if "kernel-propagation" in strategies and f.nvars == 2 and (best is None or best.rank > r_h):
        for j, g in enumerate(coords):
            try:
                consider(_try_binary(f, g, rng))
                res.log.append(f"kernel-propagation: rank {best.rank} in chart {j}")
                break
            except ApolarError as exc:
                res.log.append(f"kernel-propagation chart {j}: {exc}")
    if "support" in strategies and (best is None or best.rank > r_h):
        sup = support_decomposition(f)
        if sup.size <= r_max and (best is None or sup.size < best.rank):
            for j, g in enumerate(coords):
                try:
                    consider(_try_support(f, sup, g))
                    res.log.append(f"support: rank {best.rank} in chart {j}")
                    break
                except ApolarError as exc:
                    res.log.append(f"support chart {j}: {exc}")
        else:
            res.log.append(f"support: size {sup.size} not better than current bound or r_max {r_max}")
    if best is not None and best.rank <= r_max:
        res.r = best.rank
        res.cert = best
        if recover_points:
            try:
                res.dec = recover(best, seed=seed, degree=f.degree)
            except ApolarError as exc:
                res.log.append(f"recovery: {exc}")
    return res
