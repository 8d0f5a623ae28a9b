"""Sums of powers for monomials built from roots of unity.

For ``f = x^alpha`` and a pivot variable ``p``, the forms
``x_p + eps * sum_{i != p} zeta_i^{k_i} x_i`` with ``zeta_i`` a primitive
``(alpha_i + 1)``-th root of unity, weighted by
``eps^(alpha_p - d) * prod zeta_i^{k_i} / (prod (alpha_i + 1) * binom(d, alpha))``,
sum to ``f`` plus terms that only survive when some ``alpha_i + 1`` divides a
larger exponent.  With the pivot at the smallest exponent those extra terms
cannot occur (an exact decomposition); with the pivot at the largest exponent
they carry positive powers of ``eps`` (a border family).

Variables with exponent zero are left out of the forms: a first root of
unity is 1 and would not filter anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .polynomial import LinearForm, Polynomial, monomials, multinomial, power_of_form
from .scalars import Cyclotomic, as_fraction

__all__ = [
    "WaringDecomposition",
    "EpsilonFamily",
    "VerifyReport",
    "monomial_rank",
    "monomial_border_size",
    "monomial_waring",
    "monomial_border_family",
    "verify",
    "separating_cubic_family",
    "SEPARATING_CUBIC",
    "MAX_EXACT_ORDER",
]

# beyond this root-of-unity order exact verification switches to doubles
MAX_EXACT_ORDER = 60

SEPARATING_CUBIC = "x0^2*x2 + 6*x1^2*x3 - 3*(x0+x1)^2*x4"


def _support(alpha):
    return [i for i, a in enumerate(alpha) if a > 0]


def monomial_rank(alpha: Sequence[int]) -> int:
    """Waring rank of ``x^alpha``: ``prod(alpha_i + 1) / min(alpha_i + 1)`` over the support."""
    sup = _support(alpha)
    if not sup:
        raise PreconditionError("the constant monomial has no rank")
    prod = math.prod(alpha[i] + 1 for i in sup)
    return prod // min(alpha[i] + 1 for i in sup)


def monomial_border_size(alpha: Sequence[int]) -> int:
    """``prod(alpha_i + 1) / max(alpha_i + 1)``: size of the border family."""
    sup = _support(alpha)
    if not sup:
        raise PreconditionError("the constant monomial has no rank")
    prod = math.prod(alpha[i] + 1 for i in sup)
    return prod // max(alpha[i] + 1 for i in sup)


def _pivot(alpha, which: str) -> int:
    sup = _support(alpha)
    key = (lambda i: alpha[i]) if which == "min" else (lambda i: -alpha[i])
    # ties go to the lowest index
    return min(sup, key=lambda i: (key(i), i))


def _scalar_str(c):
    if isinstance(c, Cyclotomic):
        return c.to_json()
    if isinstance(c, complex):
        return {"re": repr(c.real), "im": repr(c.imag)}
    if isinstance(c, float):
        return repr(c)
    return str(Fraction(c))


@dataclass
class VerifyReport:
    mode: str
    ok: bool
    residual: float
    worst_monomial: tuple | None = None
    span_check: bool | None = None

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "ok": self.ok,
            "residual": self.residual,
            "worst_monomial": list(self.worst_monomial) if self.worst_monomial else None,
            "span_check": self.span_check,
        }


@dataclass
class WaringDecomposition:
    """``sum weight_i * form_i^d``, meant to equal (or approach) ``target``."""

    degree: int
    terms: list
    target: Polynomial
    order: int = 1
    eps: Fraction | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.terms:
            raise PreconditionError("a decomposition needs at least one term")

    def __len__(self):
        return len(self.terms)

    @property
    def nvars(self) -> int:
        return self.target.nvars

    def value(self) -> Polynomial:
        """Expand the sum with whatever scalars the terms carry."""
        total = Polynomial.zero(self.nvars)
        for w, form in self.terms:
            total = total + power_of_form(form, self.degree).scale(w)
        return total

    def remainder(self) -> Polynomial:
        return self.value() - self.target

    def to_json(self, report: VerifyReport | None = None) -> dict:
        out = {
            "degree": self.degree,
            "nvars": self.nvars,
            "target": str(self.target),
            "terms": [{"weight": _scalar_str(w), "form": [_scalar_str(c) for c in form.coeffs]}
                      for w, form in self.terms],
        }
        if self.eps is not None:
            out["eps"] = str(self.eps)
        out.update(self.meta)
        if report is not None:
            out["verified"] = report.ok
            out["residual"] = report.residual
        return out


def _roots_decomposition(alpha, eps, pivot) -> WaringDecomposition:
    alpha = tuple(int(a) for a in alpha)
    eps = as_fraction(eps)
    if eps == 0:
        raise PreconditionError("eps must be nonzero")
    n = len(alpha)
    d = sum(alpha)
    target = Polynomial.monomial(alpha)
    others = [i for i in _support(alpha) if i != pivot]
    if not others:
        form = LinearForm(tuple(int(i == pivot) for i in range(n)))
        return WaringDecomposition(d, [(Fraction(1), form)], target)
    orders = [alpha[i] + 1 for i in others]
    big = math.lcm(*orders)
    scale = eps ** (alpha[pivot] - d) / (math.prod(orders) * multinomial(alpha))
    terms = []
    for ks in product(*(range(o) for o in orders)):
        # zeta_i^{k_i} as a power of the common primitive root of order `big`
        powers = [k * (big // o) for k, o in zip(ks, orders)]
        w = Cyclotomic(big, {sum(powers): scale})
        coeffs = [Fraction(0)] * n
        coeffs[pivot] = Cyclotomic(big, {0: 1})
        for i, pw in zip(others, powers):
            coeffs[i] = Cyclotomic(big, {pw: eps})
        terms.append((w, LinearForm(tuple(coeffs))))
    return WaringDecomposition(d, terms, target, order=big, eps=eps)


def monomial_waring(alpha: Sequence[int], eps=1) -> WaringDecomposition:
    """Exact decomposition of ``x^alpha`` with ``monomial_rank(alpha)`` terms."""
    if not _support(alpha):
        raise PreconditionError("the constant monomial has no decomposition")
    dec = _roots_decomposition(alpha, eps, _pivot(alpha, "min"))
    dec.meta["kind"] = "waring"
    return dec


@dataclass
class EpsilonFamily:
    """Decompositions ``f_eps`` of size ``monomial_border_size`` tending to ``x^alpha``."""

    alpha: tuple
    pivot: int
    limit: Polynomial

    @property
    def size(self) -> int:
        return monomial_border_size(self.alpha)

    def at(self, eps) -> WaringDecomposition:
        dec = _roots_decomposition(self.alpha, eps, self.pivot)
        dec.meta["kind"] = "border"
        return dec

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "pivot": self.pivot, "size": self.size,
                "limit": str(self.limit)}


def monomial_border_family(alpha: Sequence[int]) -> EpsilonFamily:
    alpha = tuple(int(a) for a in alpha)
    if not _support(alpha):
        raise PreconditionError("the constant monomial has no decomposition")
    return EpsilonFamily(alpha, _pivot(alpha, "max"), Polynomial.monomial(alpha))


def _exact_scalar(c) -> bool:
    return isinstance(c, (int, Fraction, Cyclotomic))


def _as_root_term(c, order: int):
    """``c = r * zeta_order^k`` as ``(k, r)``, or None when ``c`` has several powers."""
    if isinstance(c, Cyclotomic):
        if len(c.coeffs) > 1 or order % c.order:
            return None
        if not c.coeffs:
            return 0, Fraction(0)
        (k, r), = c.coeffs.items()
        return k * (order // c.order), r
    return 0, Fraction(c)


def _fast_remainder(dec: WaringDecomposition):
    """Remainder over Q(zeta_N) when every scalar is a rational times a root of unity.

    Each product of such scalars is again a single power of ``zeta_N``, so the
    coefficient of ``x^beta`` accumulates into ``N`` rational buckets.
    """
    order = dec.order
    terms = []
    for w, form in dec.terms:
        parts = [_as_root_term(w, order)] + [_as_root_term(c, order) for c in form.coeffs]
        if any(p is None for p in parts):
            return None
        terms.append(parts)
    d = dec.degree
    out = {}
    for beta in monomials(dec.nvars, d):
        buckets: dict = {}
        mult = multinomial(beta)
        for (wk, wr), *coeffs in terms:
            k, r = wk, wr * mult
            for (ck, cr), b in zip(coeffs, beta):
                if b:
                    if not cr:
                        r = 0
                        break
                    k += ck * b
                    r *= cr ** b
            if r:
                k %= order
                buckets[k] = buckets.get(k, 0) + r
        target = dec.target.coefficient(beta)
        if target:
            buckets[0] = buckets.get(0, 0) - target
        value = Cyclotomic(order, buckets)
        if not value.is_zero():
            out[beta] = value
    return out


def _complex_power_sum(dec: WaringDecomposition):
    """Coefficient vector of the value with all scalars as complex doubles."""
    mons = monomials(dec.nvars, dec.degree)
    total = np.zeros(len(mons), dtype=complex)
    for w, form in dec.terms:
        k = np.array([complex(c) for c in form.coeffs])
        w = complex(w)
        for j, a in enumerate(mons):
            total[j] += w * multinomial(a) * np.prod(k ** np.array(a))
    return mons, total


def _span_check(dec: WaringDecomposition, tol: float = 1e-8) -> bool:
    """Does ``target`` lie in the span of the ``form^d``? (numeric)"""
    mons = monomials(dec.nvars, dec.degree)
    cols = []
    for _, form in dec.terms:
        k = np.array([complex(c) for c in form.coeffs])
        cols.append([multinomial(a) * np.prod(k ** np.array(a)) for a in mons])
    a = np.array(cols, dtype=complex).T
    b = np.array([complex(dec.target.coefficient(m)) for m in mons])
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    scale = max(1.0, float(np.abs(b).max()))
    return float(np.abs(a @ x - b).max()) <= tol * scale


def verify(dec: WaringDecomposition, mode: str = "exact", tol: float = 1e-9) -> VerifyReport:
    """Compare ``sum w_i k_i^d`` with the target.

    ``exact`` expands over the cyclotomic field and compares after reduction
    modulo the cyclotomic polynomial; ``numeric`` works in complex doubles and
    reports the largest coefficient error.
    """
    if mode not in ("exact", "numeric"):
        raise PreconditionError(f"unknown verification mode {mode!r}")
    scalars = [w for w, _ in dec.terms] + [c for _, f in dec.terms for c in f.coeffs]
    if mode == "exact" and not all(_exact_scalar(c) for c in scalars):
        raise PreconditionError("exact verification needs rational or cyclotomic scalars")
    if mode == "exact" and dec.order > MAX_EXACT_ORDER:
        mode = "numeric"
    span = _span_check(dec)
    if mode == "exact":
        fast = _fast_remainder(dec)
        rem = fast if fast is not None else dec.remainder().terms
        worst, res = None, Fraction(0)
        for m, c in rem.items():
            if isinstance(c, Cyclotomic):
                if c.is_zero():
                    continue
                v = abs(complex(c))
            else:
                v = abs(c)
            if worst is None or v > res:
                worst, res = m, v
        return VerifyReport("exact", worst is None, float(res), worst, span)
    mons, val = _complex_power_sum(dec)
    tgt = np.array([complex(dec.target.coefficient(m)) for m in mons])
    err = np.abs(val - tgt)
    j = int(np.argmax(err)) if len(err) else 0
    res = float(err[j]) if len(err) else 0.0
    return VerifyReport("numeric", res <= tol, res, mons[j] if res > 0 else None, span)


def separating_cubic_family(eps) -> WaringDecomposition:
    """Five cubes whose sum divided by ``3 eps`` tends to the cubic ``SEPARATING_CUBIC``.

    ``(x0+e x2)^3 + 6 (x1+e x3)^3 - 3 (x0+x1+e x4)^3 + 3 (x0+2x1)^3 - (x0+3x1)^3``;
    the constant parts cancel, the linear part in ``e`` is ``3 e`` times the
    cubic and the rest is the ``O(e)`` remainder after division.
    """
    from .parser import parse

    eps = as_fraction(eps)
    if eps == 0:
        raise PreconditionError("eps must be nonzero")
    s = 1 / (3 * eps)
    forms = [
        (1, (1, 0, eps, 0, 0)),
        (6, (0, 1, 0, eps, 0)),
        (-3, (1, 1, 0, 0, eps)),
        (3, (1, 2, 0, 0, 0)),
        (-1, (1, 3, 0, 0, 0)),
    ]
    terms = [(Fraction(w) * s, LinearForm(tuple(Fraction(c) for c in k))) for w, k in forms]
    dec = WaringDecomposition(3, terms, parse(SEPARATING_CUBIC, 4), eps=eps)
    dec.meta["kind"] = "border"
    return dec
