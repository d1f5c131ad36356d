"""Reduction modulo p and specialisation t -> tau of expansions.

Convergents ``x_h / y_h`` over QQ (or QQ(t)) are carried to the residue field
after clearing the smallest p-adic (or (t - tau)-adic) valuation among their
coefficients, so their images are defined and not both zero even when the
partial quotients themselves blow up.  :func:`verify_reduction_theorem`
compares the deduplicated images with the convergents of the directly
reduced series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (GF, QQ, QQt, Poly, RationalFunction, discriminant,
                      poly_gcd, prime_support, valuation)
from .cf import (ContinuedFraction, Convergent, convergents, expand_rational,
                 expand_series, expand_surd)
from .series import CharacteristicTwo, LaurentSeries
from .transform import FormalCF, canonicalize


class BadReduction(ArithmeticError):
    """A coefficient has no image in the residue field."""

    def __init__(self, target, coefficient, where: str = "", index=None):
        self.target = target
        self.coefficient = coefficient
        self.where = where
        self.index = index
        loc = f" in {where}" if where else ""
        if index is not None:
            loc += f" at index {index}"
        super().__init__(f"bad {_target_name(target)}: coefficient {coefficient}{loc}")


class BadSpecialization(BadReduction):
    pass


@dataclass(frozen=True)
class ParamPoint:
    """Specialisation target ``t -> tau``."""

    tau: Fraction

    def __post_init__(self):
        object.__setattr__(self, "tau", Fraction(self.tau))

    def __str__(self):
        return f"t={self.tau}"


def _target_name(target) -> str:
    if isinstance(target, ParamPoint):
        return f"specialisation at {target}"
    return f"reduction mod {target}"


# ---------------------------------------------------------------------------
# coefficient maps


def reduce_coeff(c: Fraction, p: int) -> int:
    c = Fraction(c)
    if c.denominator % p == 0:
        raise BadReduction(p, c)
    return c.numerator * pow(c.denominator, -1, p) % p


def _ord_at(poly: Poly, tau: Fraction) -> tuple[int, Poly]:
    """Multiplicity of the root ``tau`` and the cofactor."""
    if not poly:
        return math.inf, poly
    lin = Poly([-tau, 1], QQ, poly.var)
    k = 0
    while poly(tau) == 0:
        poly = poly // lin
        k += 1
    return k, poly


def param_valuation(c: RationalFunction, tau: Fraction):
    """(t - tau)-adic valuation of an element of QQ(t)."""
    if c.is_zero():
        return math.inf
    return _ord_at(c.num, tau)[0] - _ord_at(c.den, tau)[0]


def specialize_coeff(c: RationalFunction, tau) -> Fraction:
    tau = Fraction(tau)
    den = c.den(tau)
    if den == 0:
        raise BadSpecialization(ParamPoint(tau), c)
    return c.num(tau) / den


def _shifted_value(c, v, target):
    """Image of ``c * pi^(-v)`` where pi is the uniformiser of ``target``."""
    if isinstance(target, ParamPoint):
        if c.is_zero():
            return Fraction(0)
        kn, num = _ord_at(c.num, target.tau)
        kd, den = _ord_at(c.den, target.tau)
        if kn - kd > v:
            return Fraction(0)
        return num(target.tau) / den(target.tau)
    p = target
    c = Fraction(c)
    if c == 0:
        return 0
    return reduce_coeff(c * Fraction(p) ** (-v), p)


def _coeff_map(target):
    if isinstance(target, ParamPoint):
        return (lambda c: specialize_coeff(c, target.tau)), QQ, BadSpecialization
    return (lambda c: reduce_coeff(c, target)), GF(target), BadReduction


def _map_poly(poly: Poly, target, where=""):
    fn, F, exc = _coeff_map(target)
    try:
        return Poly._make(F.trim([F.coerce(fn(c)) for c in poly.coeffs]), F)
    except BadReduction as e:
        raise exc(target, e.coefficient, where) from None


def _map_series(s: LaurentSeries, target, where="series"):
    fn, F, exc = _coeff_map(target)
    try:
        return s.map(lambda c: F.coerce(fn(c)), F)
    except BadReduction as e:
        raise exc(target, e.coefficient, where) from None


def _map_object(obj, target, source_field):
    if isinstance(obj, Poly):
        if obj.field is not source_field:
            raise TypeError(f"expected a polynomial over {source_field}")
        return _map_poly(obj, target, "polynomial")
    if isinstance(obj, LaurentSeries):
        if obj.field is not source_field:
            raise TypeError(f"expected a series over {source_field}")
        return _map_series(obj, target)
    if isinstance(obj, ContinuedFraction):
        out = []
        for h, a in enumerate(obj.entries):
            try:
                out.append(_map_poly(a, target, "partial quotient"))
            except BadReduction as e:
                e.index = h
                e.args = (f"bad {_target_name(target)}: partial quotient a_{h} "
                          f"has coefficient {e.coefficient}",)
                raise
        return ContinuedFraction(out, obj.source, obj.complete)
    raise TypeError(f"cannot map {type(obj).__name__}")


def reduce_mod_p(obj, p: int):
    """Image of a Poly, LaurentSeries or ContinuedFraction over GF(p).

    Raises :class:`BadReduction` (with the offending coefficient and, for
    continued fractions, the index) if p divides a denominator.
    """
    return _map_object(obj, p, QQ)


def specialize(obj, tau):
    """Image of an object over QQ(t) under ``t -> tau``."""
    return _map_object(obj, ParamPoint(tau), QQt)


# ---------------------------------------------------------------------------
# normalised convergents


@dataclass(frozen=True)
class ReducedConvergent:
    h_lo: int
    h_hi: int
    shift: int
    x: Poly
    y: Poly
    target: object = None

    @property
    def normalizer(self) -> str:
        """The clearing factor ``c`` as text."""
        if isinstance(self.target, ParamPoint):
            base = f"(t - {self.target.tau})" if self.target.tau else "t"
        else:
            base = str(self.target)
        return "1" if self.shift == 0 else f"{base}^{-self.shift}"

    def same_value(self, other) -> bool:
        return self.x * other.y == other.x * self.y


def _valuation_of(c, target):
    if isinstance(target, ParamPoint):
        return param_valuation(c, target.tau)
    return valuation(c, target)


def normalize_convergent(conv: Convergent, target) -> ReducedConvergent:
    """Clear the minimal valuation of ``x, y`` and map both to the residue field."""
    if not isinstance(target, (int, ParamPoint)):
        target = ParamPoint(target)
    coeffs = list(conv.x.coeffs) + list(conv.y.coeffs)
    v = min(_valuation_of(c, target) for c in coeffs)
    if isinstance(target, ParamPoint):
        F = QQ
    else:
        F = GF(target)
    x = Poly._make(F.trim([F.coerce(_shifted_value(c, v, target)) for c in conv.x.coeffs]), F)
    y = Poly._make(F.trim([F.coerce(_shifted_value(c, v, target)) for c in conv.y.coeffs]), F)
    return ReducedConvergent(conv.h, conv.h, v, x, y, target)


def canonical_fraction(x: Poly, y: Poly) -> tuple[Poly, Poly]:
    """``x/y`` in lowest terms with monic denominator."""
    g = poly_gcd(x, y)
    x, y = x // g, y // g
    c = y.field.inv(y.lc)
    return x.scale(c), y.scale(c)


# ---------------------------------------------------------------------------
# the verifier


@dataclass
class ReductionReport:
    passed: bool
    target: object
    reduced: list = field(default_factory=list)
    direct: list = field(default_factory=list)
    matched: int = 0
    blowups: dict = field(default_factory=dict)
    note: str = ""

    @property
    def collapse_classes(self) -> list[tuple[int, int]]:
        return [(r.h_lo, r.h_hi) for r in self.reduced if r.h_hi > r.h_lo]

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def _source_expansions(source, target, depth):
    """(convergents over the source field, CF of the reduced object)."""
    mapped_field = QQ if isinstance(target, ParamPoint) else GF(target)
    if isinstance(source, Poly):
        cf, _ = expand_surd(source, depth + 1)
        reduced_d = _map_poly(source, target, "D")
        direct, _ = expand_surd(reduced_d, depth + 1)
    elif isinstance(source, LaurentSeries):
        cf = expand_series(source, depth + 1)
        direct = expand_series(_map_series(source, target), 10 * (depth + 1))
    elif isinstance(source, FormalCF):
        cf = canonicalize(source)
        fn, F, exc = _coeff_map(target)
        entries = []
        for e in source.entries:
            num, den = _map_poly(e.num, target, "entry"), _map_poly(e.den, target, "entry")
            if not den:
                raise exc(target, e, "formal entry")
            entries.append(RationalFunction(num, den))
        direct = canonicalize(FormalCF(entries, mapped_field))
    elif isinstance(source, ContinuedFraction):
        if not source.complete:
            raise ValueError("a truncated continued fraction has no reducible value")
        cf = source
        last = normalize_convergent(convergents(source)[-1], target)
        if not last.y:
            raise BadReduction(target, "denominator", "value")
        direct = expand_rational(last.x, last.y)
    else:
        raise TypeError(f"cannot verify {type(source).__name__}")
    return cf, direct


def verify_reduction_theorem(source, target, depth: int = 10) -> ReductionReport:
    """Check that reduced, deduplicated convergents are the convergents of the reduction.

    ``source`` is a monic even-degree Poly (meaning its square root), a
    LaurentSeries, a complete ContinuedFraction or a FormalCF, over QQ (for
    an integer ``target`` p) or QQ(t) (for a ParamPoint target or a bare
    Fraction tau).
    """
    if not isinstance(target, (int, ParamPoint)):
        target = ParamPoint(target)
    try:
        cf, direct = _source_expansions(source, target, depth)
    except CharacteristicTwo as e:
        return ReductionReport(False, target, note=f"bad reduction: {e}")
    except BadReduction as e:
        return ReductionReport(False, target, note=f"reduction of F does not exist: {e}")

    convs = convergents(cf)[: depth + 1]
    blowups = {}
    for h in range(len(convs)):
        try:
            _map_poly(cf[h], target)
        except BadReduction as e:
            blowups[h] = e.coefficient
    reduced: list[ReducedConvergent] = []
    for conv in convs:
        r = normalize_convergent(conv, target)
        if reduced and reduced[-1].same_value(r):
            last = reduced[-1]
            reduced[-1] = ReducedConvergent(last.h_lo, r.h_hi, last.shift,
                                            last.x, last.y, target)
        else:
            reduced.append(r)

    direct_convs = convergents(direct)
    matched = 0
    passed = True
    for r, d in zip(reduced, direct_convs):
        if not r.y or canonical_fraction(r.x, r.y) != canonical_fraction(d.x, d.y):
            passed = False
            break
        matched += 1
    note = ""
    if passed and matched < len(reduced):
        note = f"direct expansion only determined {len(direct_convs)} convergents"
    if passed and cf.complete and direct.complete and len(reduced) != len(direct_convs):
        passed = False
        note = "finite expansions differ in length"
    if matched == 0:
        passed = False
    return ReductionReport(passed, target, reduced, direct_convs, matched, blowups, note)


# ---------------------------------------------------------------------------
# blowups and screening


def blowup_primes(cf: ContinuedFraction, up_to_index: int | None = None) -> dict[int, set]:
    """Primes dividing a coefficient denominator of each ``a_h``."""
    if cf.entries and cf.field is not QQ:
        raise TypeError("blowup_primes needs rational partial quotients")
    n = len(cf) if up_to_index is None else min(len(cf), up_to_index + 1)
    out = {}
    for h in range(n):
        primes = set()
        for c in cf[h].coeffs:
            if c.denominator != 1:
                primes |= prime_support(c.denominator)
        out[h] = primes
    return out


def reduction_defect(d: Poly, p: int) -> str | None:
    """Why ``p`` is not a good-reduction prime for ``sqrt(d)``, or None."""
    if p == 2:
        return "characteristic 2"
    if any(Fraction(c).denominator % p == 0 for c in d.coeffs):
        return "coefficient denominator"
    if Fraction(d.lc).numerator % p == 0:
        return "leading coefficient"
    if Fraction(discriminant(d)).numerator % p == 0:
        return "discriminant"
    return None


__all__ = ["BadReduction", "BadSpecialization", "ParamPoint", "ReducedConvergent",
           "ReductionReport", "reduce_coeff", "reduce_mod_p", "specialize",
           "specialize_coeff", "param_valuation", "normalize_convergent",
           "canonical_fraction", "verify_reduction_theorem", "blowup_primes",
           "reduction_defect"]
