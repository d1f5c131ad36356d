"""Continued fraction expansion of Laurent series and of square roots.

Two independent engines produce partial quotients:

* :func:`expand_series` works on a truncated :class:`LaurentSeries` and only
  emits quotients that the precision window guarantees;
* :func:`expand_surd` expands ``sqrt(D)`` exactly through the complete
  quotients ``(P_h + sqrt(D)) / Q_h``, using polynomial arithmetic only.

Over ``GF(p)`` the surd recursion runs in the compiled kernel when it is
available.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from . import kernels
from .algebra import DEG_ZERO, Poly, PrimeField, poly_gcd
from .series import (CharacteristicTwo, InsufficientPrecision, LaurentSeries,
                     series_sqrt)


@dataclass(frozen=True)
class ContinuedFraction:
    """Partial quotients ``[a_0, a_1, ...]`` of some value.

    ``complete`` is True when the expansion terminated exactly (the value is
    a rational function); otherwise the entries are a guaranteed prefix.
    """

    entries: tuple
    source: str = "rational"
    complete: bool = True

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if self.entries:
            F = self.entries[0].field
            if any(a.field is not F for a in self.entries):
                raise TypeError("partial quotients over different fields")

    @property
    def field(self):
        return self.entries[0].field

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def degrees(self) -> list:
        return [a.deg for a in self.entries]

    def is_canonical(self) -> bool:
        return all(a.deg >= 1 for a in self.entries[1:])


class Convergent(NamedTuple):
    x: Poly
    y: Poly
    h: int


@dataclass
class SurdState:
    """History of complete quotients ``(P_h + sqrt(D)) / Q_h``."""

    d: Poly
    a0: Poly
    ps: list = field(default_factory=list)
    qs: list = field(default_factory=list)
    quotients: list = field(default_factory=list)
    status: str = "bound"

    @property
    def genus(self) -> int:
        return self.d.deg // 2 - 1


@dataclass(frozen=True)
class PeriodInfo:
    r: int
    m: int
    kappa: object
    full_period: int | None = None


# ---------------------------------------------------------------------------
# series engine


def expand_series(f: LaurentSeries, max_quotients: int) -> ContinuedFraction:
    """Partial quotients of ``f`` that its precision window determines."""
    if f.is_zero():
        raise ValueError("continued fraction of the zero series")
    entries = []
    complete = False
    cur = f
    for _ in range(max_quotients):
        try:
            a = cur.floor()
        except InsufficientPrecision:
            break
        entries.append(a)
        rest = cur.frac()
        if rest.is_zero():
            complete = True
            break
        if rest.is_indeterminate():
            break
        cur = rest.inverse()
    return ContinuedFraction(entries, "series", complete)


# ---------------------------------------------------------------------------
# surd engine


def _check_surd_input(d: Poly):
    if d.field.characteristic == 2:
        raise CharacteristicTwo("sqrt expansion is excluded in characteristic 2")
    if not d or d.deg % 2:
        raise ValueError("D must have even degree")
    if d.lc != d.field.one:
        raise ValueError("D must be monic")


def expand_surd(d: Poly, max_quotients: int, stop_at_period: bool = False,
                use_kernel: bool = True):
    """Exact expansion of ``sqrt(d)``; returns ``(ContinuedFraction, SurdState)``.

    Starting from ``P_0 = 0, Q_0 = 1``::

        a_h     = (P_h + A) div Q_h
        P_{h+1} = a_h Q_h - P_h
        Q_{h+1} = (D - P_{h+1}^2) / Q_h      (exact)

    where ``A`` is the polynomial part of ``sqrt(d)``.  A vanishing ``Q``
    means ``d`` is a square and the expansion is complete.  With
    ``stop_at_period`` the run ends once ``(P_1, Q_1)`` recurs.
    """
    _check_surd_input(d)
    A = series_sqrt(d, d.deg + 2).floor()
    F = d.field
    if use_kernel and isinstance(F, PrimeField):
        quotients, ps, qs, status = kernels.surd_run(
            list(d.coeffs), list(A.coeffs), F.p, max_quotients, stop_at_period)
        wrap = lambda c: Poly._make(c, F)  # noqa: E731
        quotients = [wrap(c) for c in quotients]
        ps = [wrap(c) for c in ps]
        qs = [wrap(c) for c in qs]
    else:
        quotients, ps, qs, status = _surd_loop(d, A, max_quotients, stop_at_period)
    state = SurdState(d, A, ps, qs, quotients, status)
    cf = ContinuedFraction(quotients, "surd", status == "complete")
    return cf, state


def _surd_loop(d, A, max_steps, stop_at_period):
    F = d.field
    P, Q = Poly._make([], F), Poly._make([F.one], F)
    ps, qs, quotients = [P], [Q], []
    for h in range(max_steps):
        a = (P + A) // Q
        quotients.append(a)
        P = a * Q - P
        Q = (d - P * P).exact_div(Q)
        ps.append(P)
        qs.append(Q)
        if not Q:
            return quotients, ps, qs, "complete"
        if stop_at_period and h > 0 and P == ps[1] and Q == qs[1]:
            return quotients, ps, qs, "period"
    return quotients, ps, qs, "bound"


def detect_quasi_period(state: SurdState, g: int | None = None) -> PeriodInfo | None:
    """Quasi-period, regulator and multiplier from a surd run, or None.

    The quasi-period ends at the first ``h >= 1`` with ``Q_h`` a nonzero
    constant, equivalently ``deg a_h = g + 1``.  The regulator sums
    ``deg a_j`` over ``j = 1..r``.
    """
    if g is None:
        g = state.genus
    # a_r is computed from Q_r, so only indices with an emitted quotient count
    r = next((h for h in range(1, len(state.quotients)) if state.qs[h].deg == 0), None)
    if r is None:
        return None
    m = sum(state.quotients[j].deg for j in range(1, r + 1))
    full = None
    for h in range(1, len(state.ps) - 1):
        if state.ps[h + 1] == state.ps[1] and state.qs[h + 1] == state.qs[1]:
            full = h
            break
    return PeriodInfo(r, m, state.qs[r].lc, full)


# ---------------------------------------------------------------------------
# rational functions and convergents


def expand_rational(x: Poly, y: Poly) -> ContinuedFraction:
    """Finite canonical expansion of ``x/y`` by the Euclidean algorithm."""
    if not y:
        raise ZeroDivisionError("continued fraction with zero denominator")
    entries = []
    while y:
        q, r = divmod(x, y)
        entries.append(q)
        x, y = y, r
    return ContinuedFraction(entries, "rational", True)


def convergents(cf) -> list[Convergent]:
    """Continuants ``x_h, y_h`` for every prefix of ``cf``."""
    entries = list(cf)
    if not entries:
        return []
    F = entries[0].field
    one, zero = Poly._make([F.one], F), Poly._make([], F)
    x1, y1, x2, y2 = one, zero, zero, one
    out = []
    for h, a in enumerate(entries):
        x, y = a * x1 + x2, a * y1 + y2
        out.append(Convergent(x, y, h))
        x1, y1, x2, y2 = x, y, x1, y1
    return out


@dataclass
class DegreeLawReport:
    holds: list = field(default_factory=list)
    fails: list = field(default_factory=list)
    untestable: list = field(default_factory=list)
    vacuous: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.fails


def check_degree_law(f: LaurentSeries, convs, cf) -> DegreeLawReport:
    """Check ``deg(y_h f - x_h) = -deg a_{h+1} - deg y_h`` wherever testable."""
    report = DegreeLawReport()
    n = len(cf)
    for conv in convs:
        h = conv.h
        err = conv.y * f - conv.x
        if h + 1 >= n:
            if cf.complete and h == n - 1:
                if err.is_zero() or err.is_indeterminate():
                    report.vacuous.append(h)
                else:
                    report.fails.append(h)
            continue
        if err.is_indeterminate():
            report.untestable.append(h)
            continue
        expected = -cf[h + 1].deg - conv.y.deg
        (report.holds if err.lead_exp == expected else report.fails).append(h)
    return report


def is_convergent(x: Poly, y: Poly, f: LaurentSeries) -> bool:
    """Decide whether coprime ``x/y`` is a convergent of ``f``."""
    if not y:
        raise ZeroDivisionError("zero denominator")
    if x and poly_gcd(x, y).deg > 0:
        raise ValueError("x and y must be coprime")
    err = y * f - x
    if err.is_zero():
        return True
    bound = -y.deg
    if err.coeffs:
        return err.lead_exp < bound
    if err.err < bound:
        return True
    raise InsufficientPrecision("series too short to decide convergence")


def fold_to_series(cf: ContinuedFraction, prec: int) -> LaurentSeries:
    """Series of the last convergent of ``cf`` to ``prec`` coefficients."""
    conv = convergents(cf)[-1]
    return LaurentSeries.from_rational(conv.x, conv.y, prec)


__all__ = ["ContinuedFraction", "Convergent", "SurdState", "PeriodInfo",
           "DegreeLawReport", "DEG_ZERO", "expand_series", "expand_surd",
           "expand_rational", "convergents", "check_degree_law", "is_convergent",
           "detect_quasi_period", "fold_to_series"]
