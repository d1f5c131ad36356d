"""Parser for polynomial expressions in X with coefficients in QQ or QQ(t).

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' unary)?
    atom   := INTEGER | 'X' | 't' | '(' expr ')'

Division is only by expressions free of X (except in :func:`parse_entry`,
which builds rational functions); exponents must evaluate to nonnegative
integers.  Printing a parsed polynomial with ``str`` and parsing
it again gives the same polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import QQ, QQt, Poly, RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|([Xxt])|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} at {pos}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", "X" if name in "Xx" else "t"))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, field, rational: bool = False):
        self.toks = _tokenize(text)
        self.i = 0
        self.F = field
        self.rational = rational

    def _lift(self, poly):
        return RationalFunction(poly) if self.rational else poly

    def _constant(self, val):
        """The value of an X-free expression, or None."""
        if self.rational:
            if not val.is_polynomial() or val.num.deg > 0:
                return None
            val = val.num
        if val.deg > 0:
            return None
        return val.lc if val else self.F.zero

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input")
        if op is not None and tok != ("op", op):
            raise ParseError(f"expected {op!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"unexpected token {self.peek()[1]!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            elif rhs.is_zero():
                raise ParseError("division by zero")
            elif self.rational:
                val = val / rhs
            else:
                c = self._constant(rhs)
                if c is None:
                    raise ParseError("division by an expression in X")
                val = val.scale(self.F.inv(c))
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            c = self._constant(self.unary())
            if c is None:
                raise ParseError("exponent must be a constant")
            if self.F is QQt:
                if not c.is_constant():
                    raise ParseError("exponent must not involve t")
                c = c.num.lc if c.num else 0
            n = c
            if Fraction(n).denominator != 1 or n < 0:
                raise ParseError("exponent must be a nonnegative integer")
            return base ** int(n)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self._lift(Poly.constant(val, self.F))
        if kind == "var":
            if val == "X":
                return self._lift(Poly.gen(self.F))
            if self.F is not QQt:
                raise ParseError("parameter t is not allowed here")
            return self._lift(Poly.constant(QQt.t, QQt))
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


@dataclass(frozen=True)
class PolyExpr:
    source: str
    poly: Poly

    @property
    def designator(self) -> str:
        return "param t" if self.poly.field is QQt else "rational"


def uses_parameter(text: str) -> bool:
    return any(tok == ("var", "t") for tok in _tokenize(text))


def parse_poly(text: str, field=None) -> Poly:
    """Parse ``text`` over QQ, or over QQ(t) when it mentions ``t``."""
    if field is None:
        field = QQt if uses_parameter(text) else QQ
    return _Parser(text, field).parse()


def parse_expr(text: str) -> PolyExpr:
    return PolyExpr(text, parse_poly(text))


def parse_entry(text: str, field=None) -> RationalFunction:
    """Parse a rational function of X, such as ``t/X`` or ``1/(X+1)``."""
    if field is None:
        field = QQt if uses_parameter(text) else QQ
    return _Parser(text, field, rational=True).parse()


def parse_coefficient(text: str, field=None):
    """A constant (free of X) element of QQ or QQ(t)."""
    p = parse_poly(text, field)
    if p.deg > 0:
        raise ParseError(f"{text!r} must not involve X")
    return p.lc if p else p.field.zero
