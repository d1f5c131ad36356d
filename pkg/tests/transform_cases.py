"""Random formal continued fractions shared by the rewrite tests."""

import random
from fractions import Fraction

from cfreduce.algebra import GF, QQ, Poly, RationalFunction
from cfreduce.transform import FoldError, FormalCF, fold


def rand_coeff(rng, F):
    if F is QQ:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return rng.randrange(F.characteristic)


def rand_nonzero(rng, F):
    while True:
        c = rand_coeff(rng, F)
        if not F.is_zero(F.coerce(c)):
            return F.coerce(c)


def rand_entry(rng, F):
    kind = rng.random()
    num = Poly([rand_coeff(rng, F) for _ in range(rng.randint(1, 3))], F)
    if kind < 0.3:
        return RationalFunction(Poly([rand_coeff(rng, F)], F))
    if kind < 0.8:
        return RationalFunction(num)
    den = Poly([rand_coeff(rng, F) for _ in range(rng.randint(1, 2))] + [rand_nonzero(rng, F)], F)
    return RationalFunction(num, den)


def random_formal_cfs(field, n, seed, min_len=2, max_len=6):
    """``n`` random FormalCFs whose value is defined."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        cf = FormalCF([rand_entry(rng, field) for _ in range(rng.randint(min_len, max_len))], field)
        try:
            fold(cf)
        except FoldError:
            continue
        out.append((cf, rng))
    return out


FIELDS = [QQ, GF(13)]


def continuants(cf):
    """``(x, y)`` with value x/y, from the product of [[a, 1], [1, 0]] matrices.

    Entries a = n/d enter as d * [[n/d, 1], [1, 0]] = [[n, d], [d, 0]], so
    everything stays polynomial.  Defined for every finite formal CF (no
    division happens), so it checks rewrites even where an intermediate
    tail vanishes and ``fold`` refuses.
    """
    F = cf.field
    one, zero = Poly([F.one], F), Poly([], F)
    x1, y1, x2, y2 = one, zero, zero, one
    for a in cf.entries:
        n, d = a.num, a.den
        x1, y1, x2, y2 = n * x1 + d * x2, n * y1 + d * y2, d * x1, d * y1
    return x1, y1


def same_value(lhs, rhs, scale=None, shift=None):
    """Whether value(lhs) == scale * value(rhs) + shift, projectively."""
    xa, ya = continuants(lhs)
    xb, yb = continuants(rhs)
    num, den = RationalFunction(xb), RationalFunction(yb)
    if scale is not None:
        num = num * scale
    if shift is not None:
        num = num + den * shift
    return RationalFunction(xa) * den == num * RationalFunction(ya)


def value_preserved(lhs, rhs, scale=None, shift=None):
    """value(lhs) == scale * value(rhs) + shift.

    Compares strict folds when both sides fold, and continuants otherwise
    (a rewrite may pass through a vanishing intermediate tail).
    """
    try:
        a, b = fold(lhs), fold(rhs)
    except FoldError:
        return same_value(lhs, rhs, scale, shift)
    if scale is not None:
        b = b * scale
    if shift is not None:
        b = b + shift
    return a == b
