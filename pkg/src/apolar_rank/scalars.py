"""Exact scalar domains: rationals and cyclotomic numbers.

Rationals are plain :class:`fractions.Fraction`.  A :class:`Cyclotomic`
number is a sparse vector of rationals indexed by the powers ``0..N-1`` of
a primitive ``N``-th root of unity.  Arithmetic happens modulo ``x^N - 1``;
equality is decided after reducing modulo the cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "Cyclotomic",
    "cyclotomic_polynomial",
    "as_fraction",
    "is_zero",
    "to_complex",
    "zeta",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    """Long division of dense coefficient lists (index = power)."""
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / lead
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    rem = num[: len(den) - 1]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first.

    Obtained by exact division of ``x^n - 1`` by the cyclotomic polynomials
    of the proper divisors of ``n``.
    """
    if n < 1:
        raise ValueError("order must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for e in range(1, n):
        if n % e == 0:
            num, rem = _poly_divmod(num, [Fraction(c) for c in cyclotomic_polynomial(e)])
            assert not any(rem)
    return tuple(int(c) for c in num)


class Cyclotomic:
    """Element of Q(zeta_N) stored as a sparse map ``power -> rational``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        clean: dict[int, Fraction] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
            for k, v in items:
                v = as_fraction(v)
                if v:
                    k %= order
                    s = clean.get(k, 0) + v
                    if s:
                        clean[k] = s
                    else:
                        clean.pop(k, None)
        self.coeffs = clean

    @classmethod
    def root(cls, order: int, power: int = 1, coeff=1) -> "Cyclotomic":
        return cls(order, {power % order: coeff})

    @classmethod
    def rational(cls, value, order: int = 1) -> "Cyclotomic":
        return cls(order, {0: value})

    # -- coercion ---------------------------------------------------------
    def lift(self, order: int) -> "Cyclotomic":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        return Cyclotomic(order, {k * step: v for k, v in self.coeffs.items()})

    def _common(self, other):
        if isinstance(other, Cyclotomic):
            n = math.lcm(self.order, other.order)
            return self.lift(n), other.lift(n)
        if isinstance(other, (int, Rational)):
            return self, Cyclotomic(self.order, {0: other})
        return NotImplemented, NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        out = dict(a.coeffs)
        for k, v in b.coeffs.items():
            out[k] = out.get(k, 0) + v
        return Cyclotomic(a.order, out)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            other = as_fraction(other)
            return Cyclotomic(self.order, {k: v * other for k, v in self.coeffs.items()})
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        n = a.order
        out: dict[int, Fraction] = {}
        for i, u in a.coeffs.items():
            for j, v in b.coeffs.items():
                k = (i + j) % n
                out[k] = out.get(k, 0) + u * v
        return Cyclotomic(n, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / as_fraction(other))
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return Cyclotomic(self.order, {0: other}) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if len(self.coeffs) == 1:
            (k, v), = self.coeffs.items()
            return Cyclotomic(self.order, {k * e: v ** e})
        result = Cyclotomic(self.order, {0: 1})
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_N."""
        red = self.reduced()
        if not any(red):
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = phi, _trim(red)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        # invariant: s_i * self == r_i  (mod Phi_N)
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _trim(_sub(s0, _mul(q, s1)))
            if not r1:
                raise ZeroDivisionError("cyclotomic element not invertible")
        c = r1[0]
        return Cyclotomic(self.order, {k: v / c for k, v in enumerate(s1)})

    # -- comparison -------------------------------------------------------
    def reduced(self) -> list[Fraction]:
        """Dense coefficients after reduction modulo Phi_N (length = phi(N))."""
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        dense = [Fraction(0)] * max(self.order, len(phi))
        for k, v in self.coeffs.items():
            dense[k] += v
        if len(dense) >= len(phi):
            _, dense = _poly_divmod(dense, phi)
        return dense

    def is_zero(self) -> bool:
        if not self.coeffs:
            return True
        return not any(self.reduced())

    def rational_part(self):
        """Return the rational value if this number is rational, else None."""
        red = self.reduced()
        if any(red[1:]):
            return None
        return red[0] if red else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Rational, Cyclotomic)):
            return (self - other).is_zero()
        if isinstance(other, complex) or isinstance(other, float):
            return False
        return NotImplemented

    def __hash__(self):
        red = self.reduced()
        if not any(red[1:]):
            return hash(red[0] if red else Fraction(0))
        # equal irrational values may be stored at different orders
        return hash("cyclotomic")

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        w = cmath.exp(2j * math.pi / self.order)
        return complex(sum(float(v) * w ** k for k, v in self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return f"Cyclotomic({self.order}, 0)"
        parts = [f"{v}*z^{k}" if k else f"{v}" for k, v in sorted(self.coeffs.items())]
        return f"Cyclotomic({self.order}, {' + '.join(parts)})"

    def to_json(self):
        return {"cyclo": [str(self.coeffs.get(k, Fraction(0))) for k in range(self.order)],
                "N": self.order}


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return out


def _sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def zeta(order: int, power: int = 1) -> Cyclotomic:
    return Cyclotomic.root(order, power)


def is_zero(c) -> bool:
    """Cheap structural zero test used for sparse pruning."""
    if isinstance(c, Cyclotomic):
        return not c.coeffs
    return c == 0


def to_complex(c) -> complex:
    return complex(c)
