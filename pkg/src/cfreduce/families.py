"""The quartic family D = (X^2 + u)^2 + 4 v (X + w) and torsion tests.

With the normalisation ``u + w^2 = v`` the partial quotients of sqrt(D) are
``a_0 = X^2 + u`` and ``a_h = 2 (X - c_h) / b_h``, where ``b_h, c_h`` are
products and alternating sums of the auxiliary sequence

    s_0 = 0, s_1 = oo, s_2 = 1, s_3 = v / (1 - 2w),
    s_{h+1} = v / (s_h (s_h - 1) s_{h-1})        (h >= 3).

A value ``s_k = oo`` means ``b_k = 0``: the quotient a_k blows up to degree
2 and the regulator is ``k + 1``.

This module also implements regulator sweeps over primes and the
incompatibility test on regulators that certifies non-periodicity over QQ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebra import GF, QQ, Field, Poly
from .cf import detect_quasi_period, expand_surd
from .reduction import reduce_mod_p, reduction_defect


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "oo"

    __str__ = __repr__


INF = _Infinity()


@dataclass(frozen=True)
class FamilyParams:
    u: object
    v: object
    w: object
    field: Field = QQ
    normalized: bool = False

    def __post_init__(self):
        F = self.field
        for name in ("u", "v", "w"):
            object.__setattr__(self, name, F.coerce(getattr(self, name)))
        if F.is_zero(self.v):
            raise ValueError("v = 0 makes D a perfect square")
        if self.normalized and not F.eq(F.add(self.u, F.mul(self.w, self.w)), self.v):
            raise ValueError("normalised parameters need u + w^2 = v")

    @classmethod
    def from_vw(cls, v, w, field: Field = QQ) -> "FamilyParams":
        """Normalised parameters, ``u = v - w^2``."""
        v, w = field.coerce(v), field.coerce(w)
        return cls(field.sub(v, field.mul(w, w)), v, w, field, True)

    @property
    def is_normalized(self) -> bool:
        F = self.field
        return F.eq(F.add(self.u, F.mul(self.w, self.w)), self.v)

    def quartic(self) -> Poly:
        F = self.field
        X = Poly.gen(F)
        return (X * X + self.u) ** 2 + (X + self.w).scale(F.mul(F.coerce(4), self.v))


@dataclass
class SSequence:
    values: list = field(default_factory=list)
    terminal: int | None = None

    def __getitem__(self, h):
        return self.values[h]

    def __len__(self):
        return len(self.values)

    def finite_upto(self) -> int:
        """Largest index with a finite value (s_1 aside)."""
        return len(self.values) - 1 if self.terminal is None else self.terminal - 1


def s_sequence(params: FamilyParams, n: int) -> SSequence:
    """``s_0, ..., s_n``, stopping at the first infinite value past s_2."""
    if not params.is_normalized:
        raise ValueError("the s-recurrence assumes u + w^2 = v")
    F = params.field
    one = F.one
    vals = [F.zero, INF, one]
    v, w = params.v, params.w
    den = F.sub(one, F.add(w, w))
    if n >= 3:
        if F.is_zero(den):
            vals.append(INF)
            return SSequence(vals, 3)
        vals.append(F.div(v, den))
    for h in range(3, n):
        s, prev = vals[h], vals[h - 1]
        den = F.mul(F.mul(s, F.sub(s, one)), prev)
        if F.is_zero(den):
            vals.append(INF)
            return SSequence(vals, h + 1)
        vals.append(F.div(v, den))
    return SSequence(vals[: n + 1], None)


def quotient_closed_forms(seq: SSequence, params: FamilyParams, n: int) -> list[tuple]:
    """``(b_h, c_h)`` for ``h = 1..n``.

    ``b_{2k} = (s_3 s_5 ... s_{2k-1}) / (s_2 s_4 ... s_{2k})``,
    ``b_{2k+1} = 4v (s_2 s_4 ... s_{2k}) / (s_3 s_5 ... s_{2k+1})``,
    ``c_{k+1} = (-1)^k (w - s_2 + s_3 - ... + (-1)^k s_{k+1})``,
    with empty products equal to 1 (so ``b_1 = 4v``, ``b_2 = 1``, ``c_1 = w``).
    """
    F = params.field
    top = seq.finite_upto()
    if n > top:
        raise IndexError(f"closed forms need s_2..s_{n}; s_{seq.terminal} is infinite")
    s = seq.values
    four_v = F.mul(F.coerce(4), params.v)
    out = []
    for h in range(1, n + 1):
        if h % 2 == 0:
            num = _prod(F, (s[j] for j in range(3, h, 2)))
            den = _prod(F, (s[j] for j in range(2, h + 1, 2)))
            b = F.div(num, den)
        else:
            num = _prod(F, (s[j] for j in range(2, h, 2)))
            den = _prod(F, (s[j] for j in range(3, h + 1, 2)))
            b = F.mul(four_v, F.div(num, den))
        k = h - 1
        acc = params.w
        for j in range(2, k + 2):
            term = s[j] if j % 2 else F.neg(s[j])
            acc = F.add(acc, term)
        c = acc if k % 2 == 0 else F.neg(acc)
        out.append((b, c))
    return out


def _prod(F, it):
    acc = F.one
    for x in it:
        acc = F.mul(acc, x)
    return acc


def closed_form_quotients(params: FamilyParams, n: int) -> list[Poly]:
    """``[a_0, a_1, ..., a_n]`` from the closed forms."""
    F = params.field
    seq = s_sequence(params, n)
    X = Poly.gen(F)
    out = [X * X + params.u]
    for b, c in quotient_closed_forms(seq, params, n):
        out.append((X - c).scale(F.div(F.coerce(2), b)))
    return out


SUPPORTED_M = (2, 3, 4, 5, 6, 7, 8, 11)


def torsion_condition(m: int, params: FamilyParams) -> bool:
    """The listed condition for the divisor at infinity to have order ``m``."""
    F = params.field
    u, v, w = params.u, params.v, params.w
    if m == 2:
        # v (X + w) constant: impossible while v != 0
        return F.is_zero(v)
    if m == 3:
        return F.eq(u, F.neg(F.mul(w, w)))
    if m not in SUPPORTED_M:
        raise ValueError(f"no torsion condition listed for m = {m}")
    if not params.is_normalized:
        raise ValueError("conditions for m >= 4 assume u + w^2 = v")
    one = F.one
    if m == 4:
        return F.eq(one, F.add(w, w))
    if m == 5:
        return F.eq(v, F.sub(one, F.add(w, w)))
    seq = s_sequence(params, 5)
    s = seq.values

    def val(k):
        return s[k] if k < len(s) else None

    s3, s4, s5 = val(3), val(4), val(5)
    if m == 6:
        return s4 is not None and s4 is not INF and F.eq(s4, one)
    if m == 7:
        return s4 not in (None, INF) and s3 not in (None, INF) and F.eq(s4, s3)
    if m == 8:
        return s5 not in (None, INF) and s3 not in (None, INF) and F.eq(s5, s3)
    # m == 11
    if s5 in (None, INF) or s3 in (None, INF):
        return False
    lhs = F.mul(s3, F.sub(s3, one))
    rhs = F.mul(F.mul(s5, s5), F.sub(s5, one))
    return F.eq(lhs, rhs)


# ---------------------------------------------------------------------------
# regulators and the incompatibility certificate


@dataclass(frozen=True)
class RegulatorResult:
    status: str            # "ok", "bad", "square", "not-found"
    m: int | None = None
    r: int | None = None
    kappa: object = None
    full_period: int | None = None
    reason: str | None = None


def regulator(d: Poly, step_bound: int = 1000) -> RegulatorResult:
    """Regulator of sqrt(d) over its own field."""
    cf, state = expand_surd(d, step_bound, stop_at_period=True)
    if state.status == "complete":
        return RegulatorResult("square", reason="D is a perfect square")
    info = detect_quasi_period(state)
    if info is None:
        return RegulatorResult("not-found", reason=f"no quasi-period within {step_bound} steps")
    return RegulatorResult("ok", info.m, info.r, info.kappa, info.full_period)


def regulator_sweep(d: Poly, primes, step_bound: int = 1000) -> dict[int, RegulatorResult]:
    """``m_p`` for each good-reduction prime; others are flagged ``bad``."""
    if d.field is not QQ:
        raise TypeError("regulator_sweep needs a polynomial over QQ")
    if d.deg % 2 or d.lc != 1:
        raise ValueError("D must be monic of even degree")
    out = {}
    for p in primes:
        defect = reduction_defect(d, p)
        if defect:
            out[p] = RegulatorResult("bad", reason=defect)
            continue
        out[p] = regulator(reduce_mod_p(d, p), step_bound)
    return out


def _v(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _strip(n: int, primes) -> int:
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def compatible(p: int, mp: int, q: int, mq: int) -> bool:
    """Whether ``mp * p^i = mq * q^j`` has a solution with ``i, j >= 0``."""
    return (_strip(mp, (p, q)) == _strip(mq, (p, q))
            and _v(mq, p) >= _v(mp, p) and _v(mp, q) >= _v(mq, q))


@dataclass(frozen=True)
class YuCertificate:
    verdict: str                      # "non-periodic" or "inconclusive"
    primes: tuple | None = None
    regulators: tuple | None = None
    witness: int | None = None        # a prime l outside {p, q} with v_l(m_p) != v_l(m_q)
    witness_kind: str | None = None   # "valuation" or "exponent"
    reason: str = ""


def yu_certificate(regs: dict) -> YuCertificate:
    """Certify non-periodicity from regulators at good primes.

    ``regs`` maps a prime to its regulator (an int, or a RegulatorResult;
    anything without a finite regulator is ignored).  If the divisor at
    infinity had order m over QQ, every good prime would satisfy
    ``m = m_p p^i``; a pair of primes for which no common m exists
    certifies that the expansion over QQ is not periodic.
    """
    usable = {}
    for p, m in regs.items():
        if isinstance(m, RegulatorResult):
            m = m.m if m.status == "ok" else None
        if isinstance(m, int) and m > 0:
            usable[p] = m
    if len(usable) < 2:
        return YuCertificate("inconclusive", reason="fewer than two usable primes")
    for p, q in combinations(sorted(usable), 2):
        mp, mq = usable[p], usable[q]
        if compatible(p, mp, q, mq):
            continue
        cp, cq = _strip(mp, (p, q)), _strip(mq, (p, q))
        if cp != cq:
            from sympy import factorint
            ells = sorted(set(factorint(cp)) | set(factorint(cq)))
            ell = next(int(l) for l in ells if _v(cp, l) != _v(cq, l))
            return YuCertificate("non-periodic", (p, q), (mp, mq), ell, "valuation",
                                 f"v_{ell}({mp}) = {_v(mp, ell)} != v_{ell}({mq}) = {_v(mq, ell)}")
        bad = p if _v(mq, p) < _v(mp, p) else q
        return YuCertificate("non-periodic", (p, q), (mp, mq), bad, "exponent",
                             f"the {bad}-adic valuations of {mp} and {mq} are incompatible")
    return YuCertificate("inconclusive", reason="every pair of regulators is compatible")


__all__ = ["INF", "FamilyParams", "SSequence", "s_sequence", "quotient_closed_forms",
           "closed_form_quotients", "torsion_condition", "RegulatorResult", "regulator",
           "regulator_sweep", "compatible", "YuCertificate", "yu_certificate",
           "SUPPORTED_M"]
