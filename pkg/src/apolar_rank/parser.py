"""Recursive-descent parser for polynomials in ``x0..xn``.

Grammar (whitespace is insignificant)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := power (['*'] power)*
    power   := atom ['^' integer]
    atom    := integer ['/' integer] | 'x' integer | '(' expr ')'
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeError, ParseError, PreconditionError
from .polynomial import Polynomial

__all__ = ["parse"]


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _integer(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def parse(self) -> Polynomial:
        if not self.text.strip():
            raise ParseError("empty input", 0)
        p = self.expr()
        if self._peek():
            raise ParseError(f"unexpected character {self._peek()!r}", self.pos)
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self._peek() in "+-" and self._peek():
            sign = -1 if self._peek() == "-" else 1
            self.pos += 1
        acc = self.term() * sign
        while self._peek() in ("+", "-") and self._peek():
            op = self._peek()
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.power()
        while True:
            c = self._peek()
            if c == "*":
                self.pos += 1
                acc = acc * self.power()
            elif c and (c.isdigit() or c in "x("):
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> Polynomial:
        base = self.atom()
        if self._peek() == "^":
            self.pos += 1
            return base ** self._integer()
        return base

    def atom(self) -> Polynomial:
        c = self._peek()
        start = self.pos
        if c.isdigit():
            num = self._integer()
            if self._peek() == "/":
                self.pos += 1
                den = self._integer()
                if den == 0:
                    raise ParseError("division by zero", start)
                return Polynomial.constant(self.nvars, Fraction(num, den))
            return Polynomial.constant(self.nvars, Fraction(num))
        if c == "x":
            self.pos += 1
            if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
                raise ParseError("expected a variable index after 'x'", self.pos)
            idx = self._integer()
            if idx >= self.nvars:
                raise ParseError(f"variable x{idx} out of range (n = {self.nvars - 1})", start)
            e = [0] * self.nvars
            e[idx] = 1
            return Polynomial(self.nvars, {tuple(e): 1})
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self._peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return inner
        if c in ("+", "-"):
            # unary sign inside a product, e.g. "2*-x1"
            self.pos += 1
            inner = self.power()
            return -inner if c == "-" else inner
        raise ParseError(f"unexpected {'end of input' if not c else repr(c)}", self.pos)


def parse(text: str, n: int, homogeneous: bool = True, nonzero: bool = False) -> Polynomial:
    """Parse ``text`` as a polynomial in ``x0..xn`` (``n + 1`` variables).

    With ``homogeneous=True`` an inhomogeneous result raises
    :class:`DegreeError`; with ``nonzero=True`` the zero polynomial raises
    :class:`PreconditionError`.
    """
    if n < 0:
        raise PreconditionError("n must be non-negative")
    p = _Parser(text, n + 1).parse()
    if homogeneous and not p.is_homogeneous():
        raise DegreeError(f"inhomogeneous input: degrees {sorted(p.degrees())}")
    if nonzero and p.is_zero():
        raise PreconditionError("polynomial is identically zero")
    return p
