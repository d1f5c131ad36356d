"""Exact coefficient fields and dense univariate polynomials.

Three coefficient fields are supported, each a singleton-per-parameter
object carried by every container:

* ``QQ``: the rationals, elements are :class:`fractions.Fraction`;
* ``GF(p)``: the prime field, elements are ints in ``[0, p)``;
* ``QQt``: rational functions in a parameter ``t`` over ``QQ``, elements
  are :class:`RationalFunction`.

Polynomials (:class:`Poly`) are immutable, store coefficients lowest degree
first and never carry a zero leading coefficient.  Mixing fields raises
:class:`FieldMismatch`; moving between fields is always an explicit map
(see :mod:`cfreduce.reduction`).
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

from . import kernels

#: Degree of the zero polynomial; compares below every integer.
DEG_ZERO = -math.inf


class FieldMismatch(TypeError):
    """Operands live over different coefficient fields."""


def is_prime(n: int) -> bool:
    """Deterministic trial division; moduli here are small."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_support(x) -> set[int]:
    """Primes dividing the numerator or denominator of a nonzero rational."""
    from sympy import factorint

    x = Fraction(x)
    if x == 0:
        raise ValueError("prime support of zero is undefined")
    primes = set(factorint(abs(x.numerator))) | set(factorint(x.denominator))
    return {int(q) for q in primes}


def valuation(x, p: int) -> float:
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


# ---------------------------------------------------------------------------
# fields


class Field:
    """Coefficient field interface shared by QQ, GF(p) and QQt."""

    characteristic = 0
    var = "X"

    def coerce(self, x):
        raise NotImplementedError

    # element arithmetic; overridden where operators are not enough
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if self.is_zero(b):
            raise ZeroDivisionError("division by zero in " + str(self))
        return a / b

    def inv(self, a):
        return self.div(self.one, a)

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def fmt(self, a) -> str:
        return str(a)

    def sqrt(self, a):
        """A square root of ``a`` in the field, or raise ValueError."""
        raise ValueError(f"square roots are not supported over {self}")

    # coefficient-list kernels (lowest degree first, trimmed)
    def trim(self, a: list) -> list:
        while a and self.is_zero(a[-1]):
            a.pop()
        return a

    def p_add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self.trim(out)

    def p_sub(self, a, b):
        out = list(a) + [self.zero] * (len(b) - len(a))
        for i, c in enumerate(b):
            out[i] = out[i] - c
        return self.trim(out)

    def p_scale(self, a, c):
        if self.is_zero(c):
            return []
        return self.trim([x * c for x in a])

    def p_mul(self, a, b):
        if not a or not b:
            return []
        out = [self.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if self.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return self.trim(out)

    def p_divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(a)
        db = len(b) - 1
        if len(r) - 1 < db:
            return [], r
        inv = self.inv(b[-1])
        q = [self.zero] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            q[k] = c
            if not self.is_zero(c):
                for j in range(db + 1):
                    r[k + j] = r[k + j] - c * b[j]
        return self.trim(q), self.trim(r[:db])


class RationalField(Field):
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return Fraction(x)
        if isinstance(x, RationalFunction) and x.is_constant():
            return x.num.lc
        raise FieldMismatch(f"cannot coerce {x!r} into QQ")

    def sqrt(self, a):
        n, d = a.numerator, a.denominator
        if n < 0:
            raise ValueError(f"{a} is not a square in QQ")
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn != n or rd * rd != d:
            raise ValueError(f"{a} is not a square in QQ")
        return Fraction(rn, rd)

    @staticmethod
    def _integral(a):
        """``(ints, den)`` with ``a[i] = ints[i] / den``."""
        den = math.lcm(*(x.denominator for x in a))
        return [x.numerator * (den // x.denominator) for x in a], den

    def p_mul(self, a, b):
        # convolve over Z after clearing denominators
        if not a or not b:
            return []
        ia, da = self._integral(a)
        ib, db = self._integral(b)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(ia):
            if x:
                for j, y in enumerate(ib):
                    out[i + j] += x * y
        den = da * db
        return self.trim([Fraction(c, den) for c in out])

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def coerce(self, x):
        if isinstance(x, bool):
            raise FieldMismatch("bool is not a field element")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no residue mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise FieldMismatch(f"cannot coerce {x!r} into GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return a * pow(b, -1, self.p) % self.p

    def sqrt(self, a):
        from sympy.ntheory import sqrt_mod

        if self.p == 2:
            raise ValueError("square roots in characteristic 2 are excluded")
        if a % self.p == 1:
            return 1
        r = sqrt_mod(a % self.p, self.p)
        if r is None:
            raise ValueError(f"{a} is not a square in GF({self.p})")
        return min(r, self.p - r)

    def p_add(self, a, b):
        return kernels.poly_add(a, b, self.p)

    def p_sub(self, a, b):
        return kernels.poly_sub(a, b, self.p)

    def p_scale(self, a, c):
        return kernels.poly_scale(a, c, self.p)

    def p_mul(self, a, b):
        return kernels.poly_mul(a, b, self.p)

    def p_divmod(self, a, b):
        return kernels.poly_divmod(a, b, self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p,))


class FunctionField(Field):
    """QQ(t): rational functions in one parameter over the rationals."""

    var = "t"

    @functools.cached_property
    def zero(self):
        return RationalFunction(Poly([], QQ, "t"))

    @functools.cached_property
    def one(self):
        return RationalFunction(Poly([1], QQ, "t"))

    @functools.cached_property
    def t(self):
        return RationalFunction(Poly([0, 1], QQ, "t"))

    def coerce(self, x):
        if isinstance(x, RationalFunction):
            if x.field is not QQ:
                raise FieldMismatch("QQt elements must have rational coefficients")
            return x
        if isinstance(x, Poly):
            if x.field is not QQ:
                raise FieldMismatch("QQt elements must have rational coefficients")
            return RationalFunction(Poly(x.coeffs, QQ, "t"))
        if isinstance(x, (int, Fraction, str)):
            return RationalFunction(Poly([Fraction(x)], QQ, "t"))
        raise FieldMismatch(f"cannot coerce {x!r} into QQ(t)")

    def is_zero(self, a):
        return a.is_zero()

    def sqrt(self, a):
        if a.is_constant():
            return self.coerce(QQ.sqrt(a.num.lc))
        raise ValueError(f"square root of {a} not supported in QQ(t)")

    def fmt(self, a):
        return str(a)

    def __repr__(self):
        return "QQ(t)"


QQ = RationalField()
QQt = FunctionField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """The prime field of order ``p`` (one shared instance per ``p``)."""
    return PrimeField(p)


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial over one of the coefficient fields."""

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, coeffs=(), field: Field = QQ, var: str | None = None):
        self.field = field
        self.coeffs = tuple(field.trim([field.coerce(c) for c in coeffs]))
        self.var = "X" if var is None else var

    @classmethod
    def _make(cls, coeffs, field, var="X"):
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        obj.var = var
        return obj

    @classmethod
    def gen(cls, field: Field = QQ, var: str = "X") -> "Poly":
        return cls._make([field.zero, field.one], field, var)

    @classmethod
    def constant(cls, c, field: Field = QQ, var: str = "X") -> "Poly":
        return cls([c], field, var)

    @classmethod
    def monomial(cls, c, n: int, field: Field = QQ, var: str = "X") -> "Poly":
        return cls([field.zero] * n + [c], field, var)

    # -- basic accessors
    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def _like(self, coeffs):
        return Poly._make(coeffs, self.field, self.var)

    def _check(self, other):
        if getattr(other, "_outranks_poly", False):
            return NotImplemented
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return self._like(self.field.trim([self.field.coerce(other)]))

    # -- arithmetic
    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._like(self.field.p_add(list(self.coeffs), list(other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._like(self.field.p_sub(list(self.coeffs), list(other.coeffs)))

    def __rsub__(self, other):
        other = self._check(other)
        return other if other is NotImplemented else other - self

    def __neg__(self):
        F = self.field
        return self._like([F.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._like(self.field.p_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = self.field.coerce(c)
        return self._like(self.field.p_scale(list(self.coeffs), c))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = self._like([self.field.one])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._check(other)
        q, r = self.field.p_divmod(list(self.coeffs), list(other.coeffs))
        return self._like(q), self._like(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lc))

    def derivative(self) -> "Poly":
        F = self.field
        return self._like(F.trim([F.mul(F.coerce(i), c)
                                  for i, c in enumerate(self.coeffs)][1:]))

    def __call__(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def map(self, fn, field: Field) -> "Poly":
        """Apply ``fn`` coefficientwise, landing in ``field``."""
        return Poly([fn(c) for c in self.coeffs], field, self.var)

    # -- comparison and display
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field is other.field and self.coeffs == other.coeffs
        try:
            return self == self._check(other)
        except (FieldMismatch, TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        return f"Poly({self}, {self.field!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if F.is_zero(c):
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            s = F.fmt(c)
            neg = s.startswith("-") and not _needs_parens(s[1:])
            if neg:
                s = s[1:]
            if mono:
                if s == "1":
                    s = mono
                else:
                    s = (f"({s})" if _needs_parens(s) else s) + "*" + mono
            terms.append(("-" if neg else "+", s))
        sign, first = terms[0]
        out = ("-" if sign == "-" else "") + first
        for sign, s in terms[1:]:
            out += f" {sign} {s}"
        return out


def _needs_parens(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and i > 0:
            return True
        elif depth == 0 and ch == "/" and ("t" in s or "X" in s):
            return True
    return False


def poly_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division: ``a = q*b + r`` with ``deg r < deg b``."""
    return divmod(a, b)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    if a.field is not b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a.monic()


def resultant(a: Poly, b: Poly):
    """Resultant of two nonzero polynomials by the Euclidean recursion."""
    F = a.field
    if not a or not b:
        return F.zero
    res = F.one
    while b.deg > 0:
        r = a % b
        if not r:
            return F.zero
        if a.deg % 2 == 1 and b.deg % 2 == 1:
            res = F.neg(res)
        for _ in range(a.deg - r.deg):
            res = F.mul(res, b.lc)
        a, b = b, r
    # b is a nonzero constant
    for _ in range(a.deg):
        res = F.mul(res, b.lc)
    return res


def discriminant(d: Poly) -> Fraction:
    """Discriminant of a rational polynomial of degree at least 2."""
    if d.field is not QQ:
        raise TypeError("discriminant requires rational coefficients")
    n = d.deg
    if n < 2:
        raise ValueError("discriminant requires degree >= 2")
    r = resultant(d, d.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r / d.lc


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Quotient ``num/den`` of polynomials, kept coprime with ``den`` monic.

    Over ``QQ`` in the variable ``t`` this is the element type of ``QQt``;
    over any field in ``X`` it is the entry type of formal continued
    fractions.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = num._like([num.field.one])
        elif den.field is not num.field:
            raise FieldMismatch(f"{num.field} vs {den.field}")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, den._like([num.field.one])
            return
        if den.deg > 0:
            g = poly_gcd(num, den)
            if g.deg > 0:
                num, den = num // g, den // g
        c = den.lc
        if c != num.field.one:
            inv = num.field.inv(c)
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def _coprime(cls, num: Poly, den: Poly) -> "RationalFunction":
        """Build from ``num, den`` already known to be coprime."""
        obj = object.__new__(cls)
        F = num.field
        if not num:
            obj.num, obj.den = num, den._like([F.one])
            return obj
        c = den.lc
        if c != F.one:
            inv = F.inv(c)
            num, den = num.scale(inv), den.scale(inv)
        obj.num, obj.den = num, den
        return obj

    @property
    def field(self):
        return self.num.field

    @property
    def var(self):
        return self.num.var

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return self.num.deg <= 0 and self.den.deg == 0

    def is_polynomial(self):
        return self.den.deg == 0

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        return RationalFunction(self.num._like([]) + self.field.coerce(other))

    def __add__(self, other):
        o = self._lift(other)
        if self.den.deg == 0 and o.den.deg == 0:
            return RationalFunction._coprime(self.num + o.num, self.den)
        if o.den.deg == 0:
            # gcd(n + p d, d) = gcd(n, d) = 1
            return RationalFunction._coprime(self.num + o.num * self.den, self.den)
        if self.den.deg == 0:
            return RationalFunction._coprime(o.num + self.num * o.den, o.den)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        obj = object.__new__(RationalFunction)
        obj.num, obj.den = -self.num, self.den
        return obj

    def __mul__(self, other):
        o = self._lift(other)
        if self.is_constant() or o.is_constant():
            return RationalFunction._coprime(self.num * o.num, self.den * o.den)
        # cross-cancel, so the product of reduced inputs is reduced
        n1, d2 = _cancel(self.num, o.den)
        n2, d1 = _cancel(o.num, self.den)
        return RationalFunction._coprime(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RationalFunction._coprime(o.den, o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den ** -n, self.num ** -n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (FieldMismatch, TypeError, ValueError, ZeroDivisionError):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        F = self.field
        return F.div(self.num(x), self.den(x))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den.deg == 0:
            return str(self.num)
        n, d = str(self.num), str(self.den)
        if _needs_parens(n) or "/" in n:
            n = f"({n})"
        return f"{n}/({d})"


def _cancel(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if a.deg <= 0 or b.deg <= 0:
        return a, b
    g = poly_gcd(a, b)
    return (a // g, b // g) if g.deg > 0 else (a, b)


def field_ops(op: str, a, b, field: Field):
    """Element arithmetic by name: add, sub, mul, div, inverse, equality."""
    a = field.coerce(a)
    if op == "inverse":
        return field.inv(a)
    b = field.coerce(b)
    table = {"add": field.add, "sub": field.sub, "mul": field.mul,
             "div": field.div, "eq": field.eq}
    return table[op](a, b)
