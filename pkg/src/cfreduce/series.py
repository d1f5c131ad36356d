"""Truncated formal Laurent series in descending powers of X.

A series is stored as its known coefficients for the exponents
``top, top-1, ...`` together with an error exponent ``err``: every
coefficient at an exponent ``<= err`` is unknown.  Exact series (for example
polynomials) have ``err = -inf``.  The guaranteed precision ``prec`` counts
known coefficients from the leading (nonzero) term inclusive, so it is
``lead_exp - err``.  Every operation derives the result's ``err`` from the
operands', which makes each later partial quotient either provably right or
reported as not yet determined.
"""

from __future__ import annotations

import math

from .algebra import QQ, DEG_ZERO, Field, FieldMismatch, Poly


class InsufficientPrecision(ArithmeticError):
    """A requested coefficient lies outside the guaranteed window."""


class CharacteristicTwo(ValueError):
    """Square roots are excluded in characteristic 2."""


class LaurentSeries:
    __slots__ = ("field", "top", "coeffs", "err")
    _outranks_poly = True  # Poly arithmetic defers to the series

    def __init__(self, field: Field, top, coeffs, err=-math.inf):
        coeffs = list(coeffs)
        # strip leading zeros
        i = 0
        while i < len(coeffs) and field.is_zero(coeffs[i]):
            i += 1
        coeffs = coeffs[i:]
        top = top - i if coeffs else None
        if err == -math.inf:
            while coeffs and field.is_zero(coeffs[-1]):
                coeffs.pop()
            if not coeffs:
                top = None
        self.field = field
        self.top = top
        self.coeffs = tuple(coeffs)
        self.err = err

    # -- constructors
    @classmethod
    def from_coeffs(cls, coeffs, top: int = 0, field: Field = QQ, prec=None):
        """Series ``sum coeffs[i] X^(top-i)`` known to ``prec`` terms from ``top``.

        ``prec=None`` means exact (all later coefficients are zero).
        """
        coeffs = [field.coerce(c) for c in coeffs]
        if prec is None:
            return cls(field, top, coeffs)
        coeffs = coeffs[:prec] + [field.zero] * (prec - len(coeffs))
        return cls(field, top, coeffs, top - prec)

    @classmethod
    def from_poly(cls, poly: Poly) -> "LaurentSeries":
        if not poly:
            return cls(poly.field, 0, [])
        return cls(poly.field, poly.deg, reversed(poly.coeffs))

    @classmethod
    def from_rational(cls, x: Poly, y: Poly, prec: int) -> "LaurentSeries":
        """Expansion of ``x/y`` to ``prec`` guaranteed coefficients."""
        return cls.from_poly(x) * cls.from_poly(y).inverse(prec)

    @classmethod
    def zero(cls, field: Field = QQ):
        return cls(field, 0, [])

    # -- accessors
    @property
    def exact(self) -> bool:
        return self.err == -math.inf

    def is_zero(self) -> bool:
        """Exactly zero (as opposed to zero to the known precision)."""
        return self.exact and not self.coeffs

    def is_indeterminate(self) -> bool:
        """All known coefficients vanish but the series is not known to be 0."""
        return not self.exact and not self.coeffs

    @property
    def lead_exp(self):
        if self.coeffs:
            return self.top
        if self.exact:
            return DEG_ZERO
        raise InsufficientPrecision(f"leading term lies at or below X^{self.err}")

    @property
    def prec(self):
        if self.exact:
            return math.inf
        if not self.coeffs:
            return 0
        return self.top - self.err

    @property
    def lowest_known(self):
        """Smallest exponent whose coefficient is known (or stored, if exact)."""
        if not self.exact:
            return self.err + 1
        return self.top - len(self.coeffs) + 1 if self.coeffs else 0

    def coeff(self, k: int):
        if k <= self.err:
            raise InsufficientPrecision(f"coefficient of X^{k} not guaranteed")
        if self.top is None or k > self.top:
            return self.field.zero
        i = self.top - k
        return self.coeffs[i] if i < len(self.coeffs) else self.field.zero

    def coefficients(self, n: int) -> list:
        """The first ``n`` coefficients starting at the leading term."""
        e = self.lead_exp
        return [self.coeff(e - i) for i in range(n)]

    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            if isinstance(other, Poly):
                other = LaurentSeries.from_poly(other)
            else:
                c = self.field.coerce(other)
                other = LaurentSeries(self.field, 0, [c])
        if other.field is not self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    # -- arithmetic
    def __add__(self, other):
        other = self._check(other)
        F = self.field
        err = max(self.err, other.err)
        tops = [s.top for s in (self, other) if s.top is not None]
        if not tops:
            return LaurentSeries(F, 0, [], err)
        hi = max(tops)
        if err == -math.inf:
            lo = min(s.lowest_known for s in (self, other) if s.coeffs)
        else:
            lo = err + 1
        if hi < lo:
            return LaurentSeries(F, 0, [], err)
        out = [F.add(self.coeff(k), other.coeff(k)) for k in range(hi, lo - 1, -1)]
        return LaurentSeries(F, hi, out, err)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return LaurentSeries(F, self.top or 0, [F.neg(c) for c in self.coeffs], self.err)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return LaurentSeries(F, 0, [])
        if self.is_indeterminate() or other.is_indeterminate():
            raise InsufficientPrecision("product with a series of unknown order")
        top = self.top + other.top
        if self.exact and other.exact:
            n = len(self.coeffs) + len(other.coeffs) - 1
            err = -math.inf
        else:
            n = min(self.prec, other.prec)
            err = top - n
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            acc = F.zero
            for i in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
                acc = F.add(acc, F.mul(a[i], b[k - i]))
            out.append(acc)
        return LaurentSeries(F, top, out, err)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentSeries":
        F = self.field
        c = F.coerce(c)
        return LaurentSeries(F, self.top or 0, [F.mul(c, x) for x in self.coeffs], self.err)

    def shift(self, n: int) -> "LaurentSeries":
        """Multiply by X^n."""
        return LaurentSeries(self.field, (self.top or 0) + n, self.coeffs, self.err + n)

    def inverse(self, prec=None) -> "LaurentSeries":
        """Reciprocal, keeping the relative precision (capped by ``prec``)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero series")
        if self.is_indeterminate():
            raise InsufficientPrecision("inverse of a series of unknown order")
        n = self.prec if prec is None else min(self.prec, prec)
        if n == math.inf:
            raise ValueError("inverse of an exact series needs an explicit precision")
        F = self.field
        a = list(self.coeffs[:n]) + [F.zero] * (n - len(self.coeffs))
        inv0 = F.inv(a[0])
        b = [inv0]
        for k in range(1, n):
            acc = F.zero
            for j in range(1, k + 1):
                if not F.is_zero(a[j]):
                    acc = F.add(acc, F.mul(a[j], b[k - j]))
            b.append(F.neg(F.mul(inv0, acc)))
        return LaurentSeries(F, -self.top, b, -self.top - n)

    def truncate(self, prec: int) -> "LaurentSeries":
        """Forget everything past ``prec`` coefficients from the leading term."""
        if self.prec <= prec:
            return self
        e = self.lead_exp
        return LaurentSeries(self.field, e, self.coefficients(prec), e - prec)

    # -- polynomial / fractional parts
    def floor(self) -> Poly:
        """Polynomial part (exponents >= 0)."""
        if self.err >= 0:
            raise InsufficientPrecision("constant term not guaranteed")
        F = self.field
        if self.top is None or self.top < 0:
            return Poly._make([], F)
        return Poly._make(F.trim([self.coeff(k) for k in range(0, self.top + 1)]), F)

    def frac(self) -> "LaurentSeries":
        """Part with negative exponents."""
        if self.err >= 0:
            raise InsufficientPrecision("constant term not guaranteed")
        F = self.field
        if self.top is None:
            return LaurentSeries(F, 0, [], self.err)
        start = min(self.top, -1)
        lo = self.lowest_known
        return LaurentSeries(F, start, [self.coeff(k) for k in range(start, lo - 1, -1)],
                             self.err)

    def map(self, fn, field: Field) -> "LaurentSeries":
        return LaurentSeries(field, self.top or 0, [fn(c) for c in self.coeffs], self.err)

    def agrees(self, other: "LaurentSeries") -> bool:
        """Equality on the window where both operands are known."""
        other = self._check(other)
        err = max(self.err, other.err)
        exps = [s.top for s in (self, other) if s.top is not None]
        if not exps:
            return True
        lo = err + 1 if err > -math.inf else min(s.lowest_known for s in (self, other) if s.coeffs)
        return all(self.field.eq(self.coeff(k), other.coeff(k))
                   for k in range(max(exps), lo - 1, -1))

    def __repr__(self):
        return f"LaurentSeries({self})"

    def __str__(self):
        F = self.field
        parts = []
        for i, c in enumerate(self.coeffs):
            if F.is_zero(c):
                continue
            k = self.top - i
            mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            s = F.fmt(c)
            if mono:
                s = mono if s == "1" else f"({s})*{mono}"
            parts.append(s)
        body = " + ".join(parts) if parts else "0"
        if self.exact:
            return body
        return f"{body} + O(X^{self.err})"


def series_sqrt(d: Poly, n_terms: int) -> LaurentSeries:
    """Square root of ``d`` in descending powers of X, ``n_terms`` coefficients.

    Coefficients come from matching the square term by term.  The branch has
    the principal square root of the leading coefficient (monic for monic d).
    """
    F = d.field
    if F.characteristic == 2:
        raise CharacteristicTwo("square roots are excluded in characteristic 2")
    if not d or d.deg % 2:
        raise ValueError("square root needs a nonzero polynomial of even degree")
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    n = d.deg
    k = n // 2
    # dj = coefficient of X^(n - j)
    dj = [d.coeff(n - j) for j in range(n_terms)]
    s0 = F.sqrt(d.lc)
    two_s0_inv = F.inv(F.add(s0, s0))
    s = [s0]
    for j in range(1, n_terms):
        acc = dj[j] if j <= n else F.zero
        for i in range(1, j):
            acc = F.sub(acc, F.mul(s[i], s[j - i]))
        s.append(F.mul(acc, two_s0_inv))
    return LaurentSeries(F, k, s, k - n_terms)


def g3_series(n_terms: int, field: Field = QQ) -> LaurentSeries:
    """Cantor's product prod_h (1 + X^(-3^h)) to ``n_terms`` coefficients."""
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    out = LaurentSeries(field, 0, [field.one])
    step = 1
    while step < n_terms:
        factor = LaurentSeries(field, 0, [field.one] + [field.zero] * (step - 1) + [field.one])
        out = out * factor
        step *= 3
    return out.truncate(n_terms)


# names used by the operation table
series_add = LaurentSeries.__add__
series_mul = LaurentSeries.__mul__
series_neg = LaurentSeries.__neg__
series_inverse = LaurentSeries.inverse
