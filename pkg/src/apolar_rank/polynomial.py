"""Sparse multivariate polynomials, dual polynomials and the apolar product.

A polynomial is a map from exponent tuples to coefficients.  Homogeneous
forms of degree ``d`` in ``x0..xn`` use tuples of length ``n+1``; affine
polynomials in ``x1..xn`` use tuples of length ``n``.  Coefficients are
Fractions by default; :class:`~apolar_rank.scalars.Cyclotomic` numbers and
complex doubles are accepted wherever only ring operations are needed.

Monomials of equal degree are ordered lexicographically on exponent vectors
with the first variable most significant and larger exponents first, so
``x0^2 > x0*x1 > x1^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import DegreeError, PreconditionError
from .scalars import is_zero

__all__ = [
    "Polynomial",
    "DualElement",
    "LinearForm",
    "PointDiffTerm",
    "monomials",
    "monomials_upto",
    "multinomial",
    "apolar_product",
    "dual_of",
    "primal_of",
    "act",
    "dehomogenize",
    "homogenize",
    "evaluate",
    "power_of_form",
    "compose",
    "variable",
]


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of the given total degree, in the fixed order."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if degree < 0:
        return ()
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomials_upto(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Graded listing: degree 0 first, fixed order within each degree."""
    out = []
    for k in range(degree + 1):
        out.extend(monomials(nvars, k))
    return tuple(out)


@lru_cache(maxsize=None)
def multinomial(alpha: tuple[int, ...]) -> int:
    """``binom(|alpha|, alpha) = |alpha|! / prod(alpha_i!)``."""
    out = math.factorial(sum(alpha))
    for a in alpha:
        out //= math.factorial(a)
    return out


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial with exact (or at least ring) coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                if isinstance(c, int):
                    c = Fraction(c)
                if not is_zero(c):
                    clean[exp] = c
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def from_bombieri(cls, nvars: int, coeffs: Mapping[tuple[int, ...], object]) -> "Polynomial":
        """Build ``sum f_a * binom(d, a) * x^a`` from Bombieri coefficients ``f_a``."""
        return cls(nvars, {a: c * multinomial(tuple(a)) for a, c in coeffs.items()})

    # -- basic properties ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def require_form(self, nonzero: bool = True) -> int:
        """Check homogeneity (and non-vanishing); return the degree."""
        degs = self.degrees()
        if len(degs) > 1:
            raise DegreeError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
        if nonzero and not degs:
            raise PreconditionError("the zero polynomial is not allowed here")
        return degs.pop() if degs else -1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), [-e for e in t[0]]))

    def coefficient(self, exp) -> object:
        return self.terms.get(tuple(exp), Fraction(0))

    def bombieri(self) -> dict[tuple[int, ...], object]:
        """Bombieri coefficients ``f_a = c_a / binom(d, a)`` of a form."""
        self.require_form(nonzero=False)
        return {a: c / multinomial(a) for a, c in self.terms.items()}

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "Polynomial":
        return Polynomial(self.nvars, {e: c * s for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return Polynomial(self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        diff = self - other
        return all(c == 0 for c in diff.terms.values())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def derivative(self, i: int, times: int = 1) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i] >= times:
                f = math.perm(e[i], times)
                ne = e[:i] + (e[i] - times,) + e[i + 1:]
                out[ne] = c * f
        return Polynomial(self.nvars, out)

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def __call__(self, *point):
        return evaluate(self, point)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {str(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def format_polynomial(p: Polynomial, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = [f"x{i}" for i in range(p.nvars)]
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted(p.terms.items(), key=lambda t: (-sum(t[0]), [-x for x in t[0]])):
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        if isinstance(c, Fraction):
            neg = c < 0
            a = -c if neg else c
            coeff = str(a)
            if a.denominator != 1:
                coeff = f"({coeff})" if mono else coeff
        else:
            neg = False
            coeff = f"({c})"
        if mono:
            body = mono if coeff == "1" else f"{coeff}*{mono}"
        else:
            body = coeff
        parts.append(("- " if neg else "+ ") + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[1:]


def variable(nvars: int, i: int) -> Polynomial:
    e = [0] * nvars
    e[i] = 1
    return Polynomial(nvars, {tuple(e): 1})


class DualElement:
    """Linear functional on ``S^d`` written in the dual monomial basis.

    ``terms[a]`` is the coefficient of ``d^a``, where ``d^a(x^b) = [a == b]``.
    """

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        self.degree = degree
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if sum(e) != degree:
                raise DegreeError(f"dual monomial {e} is not of degree {degree}")
            if isinstance(c, int):
                c = Fraction(c)
            if not is_zero(c):
                clean[e] = c
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, g: Polynomial):
        if g.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        g.require_form(nonzero=False)
        if not g.is_zero() and g.degree != self.degree:
            raise DegreeError(f"functional of degree {self.degree} applied to degree {g.degree}")
        return sum((c * self.terms[e] for e, c in g.terms.items() if e in self.terms), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, DualElement):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if self.is_zero() and other.is_zero():
            return True
        if self.degree != other.degree:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __repr__(self):
        body = " + ".join(
            f"{c}*d^{e}" for e, c in sorted(self.terms.items(), key=lambda t: [-x for x in t[0]])
        )
        return f"DualElement(deg={self.degree}, {body or '0'})"


@dataclass(frozen=True)
class LinearForm:
    """``k0*x0 + ... + kn*xn``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(
            Fraction(c) if isinstance(c, int) else c for c in self.coeffs))

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_polynomial(self) -> Polynomial:
        n = len(self.coeffs)
        return Polynomial(n, {tuple(int(i == j) for j in range(n)): c
                              for i, c in enumerate(self.coeffs)})


@dataclass(frozen=True)
class PointDiffTerm:
    """The functional ``p -> (phi(d/dx) p)(point)`` on affine polynomials."""

    point: tuple
    phi: Polynomial

    def __post_init__(self):
        if self.phi.is_zero():
            raise PreconditionError("differential polynomial must be nonzero")
        if len(self.point) != self.phi.nvars:
            raise ValueError("point dimension does not match the differential variables")

    def apply(self, p: Polynomial):
        """Evaluate on an affine polynomial."""
        total = 0
        for g, c in self.phi.terms.items():
            q = p
            for i, k in enumerate(g):
                if k:
                    q = q.derivative(i, k)
            if not q.is_zero():
                total = total + c * evaluate(q, self.point)
        return total

    def on_monomial(self, beta: Sequence[int]):
        """Value on ``x^beta`` without building polynomials."""
        total = 0
        for g, c in self.phi.terms.items():
            if any(b < k for b, k in zip(beta, g)):
                continue
            f = 1
            val = 1
            for b, k, z in zip(beta, g, self.point):
                f *= math.perm(b, k)
                if b - k:
                    val = val * z ** (b - k)
            total = total + c * f * val
        return total


def apolar_product(f: Polynomial, g: Polynomial):
    """``sum_a f_a g_a binom(d, a)`` with Bombieri coefficients ``f_a, g_a``."""
    if f.nvars != g.nvars:
        raise ValueError("variable count mismatch")
    df = f.require_form(nonzero=False)
    dg = g.require_form(nonzero=False)
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    if df != dg:
        raise DegreeError(f"apolar product needs equal degrees, got {df} and {dg}")
    total = Fraction(0)
    for a, c in f.terms.items():
        if a in g.terms:
            total = total + c * g.terms[a] / multinomial(a)
    return total


def dual_of(f: Polynomial, degree: int | None = None) -> DualElement:
    """``f* : g -> <f, g>`` expressed in the dual monomial basis."""
    d = f.require_form(nonzero=False)
    if f.is_zero():
        return DualElement(f.nvars, degree if degree is not None else 0)
    return DualElement(f.nvars, d, {a: c / multinomial(a) for a, c in f.terms.items()})


def primal_of(lam: DualElement) -> Polynomial:
    return Polynomial(lam.nvars, {a: c * multinomial(a) for a, c in lam.terms.items()})


def act(p: Polynomial, lam: DualElement) -> DualElement:
    """``(p . lam)(q) = lam(p q)``: each ``x_i`` lowers the ``d_i`` exponent."""
    if p.nvars != lam.nvars:
        raise ValueError("variable count mismatch")
    if p.is_zero():
        return DualElement(lam.nvars, max(lam.degree, 0))
    k = p.require_form(nonzero=False)
    if k > lam.degree:
        raise DegreeError(f"cannot act by degree {k} on a functional of degree {lam.degree}")
    out: dict = {}
    for g, c in p.terms.items():
        for a, v in lam.terms.items():
            if all(x >= y for x, y in zip(a, g)):
                e = tuple(x - y for x, y in zip(a, g))
                out[e] = out.get(e, 0) + c * v
    return DualElement(lam.nvars, lam.degree - k, out)


def dehomogenize(f: Polynomial) -> Polynomial:
    """Substitute ``x0 = 1``; the result lives in ``x1..xn``."""
    if f.nvars < 1:
        raise ValueError("need at least one variable")
    f.require_form(nonzero=False)
    out: dict = {}
    for e, c in f.terms.items():
        out[e[1:]] = out.get(e[1:], 0) + c
    return Polynomial(f.nvars - 1, out)


def homogenize(f: Polynomial, degree: int) -> Polynomial:
    if f.degree > degree:
        raise DegreeError(f"cannot homogenize degree {f.degree} to degree {degree}")
    return Polynomial(f.nvars + 1, {(degree - sum(e),) + e: c for e, c in f.terms.items()})


def evaluate(f: Polynomial, point: Sequence):
    if len(point) != f.nvars:
        raise ValueError(f"expected {f.nvars} coordinates, got {len(point)}")
    point = [Fraction(x) if isinstance(x, int) else x for x in point]
    total = Fraction(0)
    for e, c in f.terms.items():
        v = c
        for x, k in zip(point, e):
            if k:
                v = v * x ** k
        total = total + v
    return total


def power_of_form(k: LinearForm | Sequence, d: int) -> Polynomial:
    """Multinomial expansion of ``(k0 x0 + ... + kn xn)^d``."""
    coeffs = k.coeffs if isinstance(k, LinearForm) else tuple(k)
    coeffs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
    n = len(coeffs)
    nz = [i for i, c in enumerate(coeffs) if not is_zero(c)]
    out = {}
    for sub in monomials(len(nz), d):
        a = [0] * n
        v = multinomial(sub)
        for i, s in zip(nz, sub):
            a[i] = s
            if s:
                v = v * coeffs[i] ** s
        out[tuple(a)] = v
    return Polynomial(n, out)


def compose(f: Polynomial, g: Sequence[Sequence]) -> Polynomial:
    """``(f o g)(x) = f(g x)`` for a square matrix ``g`` (rows = new linear forms)."""
    n = f.nvars
    if len(g) != n or any(len(row) != n for row in g):
        raise ValueError("coordinate change must be square of size nvars")
    images = [LinearForm(tuple(row)).as_polynomial() for row in g]
    cache: dict = {}

    def pw(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = images[i] ** k
        return cache[key]

    out = Polynomial.zero(n)
    for e, c in f.terms.items():
        term = Polynomial.constant(n, c)
        for i, k in enumerate(e):
            if k:
                term = term * pw(i, k)
        out = out + term
    return out

