"""Value-preserving rewrites of formal continued fractions.

A :class:`FormalCF` is a finite list of rational functions in X; entries may
be constants, zero, or of negative degree, so it can hold expressions such
as ``[a X^-1, q(X), beta]`` that are not continued fraction expansions in the
usual sense.  Every rewrite below returns a FormalCF with the same value
(or a stated multiple of it) when folded, and :func:`canonicalize` turns any
of them back into a genuine expansion.
"""

from __future__ import annotations

from .algebra import Field, Poly, RationalFunction
from .cf import ContinuedFraction, expand_rational


class FoldError(ZeroDivisionError):
    """Folding met a tail whose value is identically zero."""


def as_entry(x, field: Field) -> RationalFunction:
    """Lift a coefficient, Poly or RationalFunction to an entry over ``field``."""
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x)
    return RationalFunction(Poly([field.coerce(x)], field))


class FormalCF:
    __slots__ = ("field", "entries")

    def __init__(self, entries, field: Field):
        self.field = field
        self.entries = tuple(as_entry(e, field) for e in entries)
        for e in self.entries:
            if e.field is not field:
                raise TypeError(f"entry over {e.field}, expected {field}")

    @classmethod
    def from_cf(cls, cf: ContinuedFraction) -> "FormalCF":
        return cls(cf.entries, cf.field)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, FormalCF) and self.entries == other.entries

    def __repr__(self):
        return "FormalCF[" + ", ".join(str(e) for e in self.entries) + "]"


def fold(cf: FormalCF) -> RationalFunction:
    """Value ``a_0 + 1/(a_1 + 1/(...))`` as a reduced rational function."""
    if not cf.entries:
        raise FoldError("empty continued fraction has no finite value")
    # carry the tail as an unreduced pair n/d and reduce once at the end
    last = cf.entries[-1]
    n, d = last.num, last.den
    for a in reversed(cf.entries[:-1]):
        if not n:
            raise FoldError("tail value vanishes identically")
        # a + d/n = (a.num n + a.den d) / (a.den n)
        n, d = a.num * n + a.den * d, a.den * n
    return RationalFunction(n, d)


def affine_tail(cf: FormalCF, c, d) -> FormalCF:
    """FormalCF with value ``c * value(cf) + d``.

    ``c [a0, a1, a2, ...] = [c a0, a1/c, c a2, a3/c, ...]``, then ``d`` is
    added to the head.  The empty CF stands for infinity and is kept.
    """
    c, d = as_entry(c, cf.field), as_entry(d, cf.field)
    if c.is_zero():
        raise ValueError("affine_tail needs a nonzero multiplier")
    if not cf.entries:
        return cf
    out = [a * c if i % 2 == 0 else a / c for i, a in enumerate(cf.entries)]
    out[0] = out[0] + d
    return FormalCF(out, cf.field)


def multiply_lemma(cf: FormalCF, B, C) -> FormalCF:
    """Rescale so that the value is multiplied by ``C/B``.

    This is the identity ``B [C a0, B a1, C a2, ...] = C [B a0, C a1, B a2, ...]``
    read as a rewrite: entries at even positions gain ``C/B``, odd positions
    gain ``B/C``.
    """
    B, C = as_entry(B, cf.field), as_entry(C, cf.field)
    if B.is_zero() or C.is_zero():
        raise ValueError("multipliers must be nonzero")
    return affine_tail(cf, C / B, 0)


def multiply_lemma_sides(cf: FormalCF, B, C) -> tuple[FormalCF, FormalCF]:
    """Both sides ``[C a0, B a1, ...]`` and ``[B a0, C a1, ...]`` of the identity."""
    B, C = as_entry(B, cf.field), as_entry(C, cf.field)
    if B.is_zero() or C.is_zero():
        raise ValueError("multipliers must be nonzero")
    left = [a * (C if i % 2 == 0 else B) for i, a in enumerate(cf.entries)]
    right = [a * (B if i % 2 == 0 else C) for i, a in enumerate(cf.entries)]
    return FormalCF(left, cf.field), FormalCF(right, cf.field)


def negate_lemma(cf: FormalCF, i: int, variant: str = "first") -> FormalCF:
    """Rewrite ``[..., A, B, beta]`` at positions ``i, i+1``.

    ``first``:  ``[..., A-1, 1, -B-1, -beta]``
    ``second``: ``[..., A+1, -1, -B+1, -beta]``
    """
    if not 0 <= i < len(cf) - 1:
        raise IndexError("negate_lemma needs entries at i and i+1")
    one = as_entry(1, cf.field)
    A, B = cf[i], cf[i + 1]
    if variant == "first":
        mid = [A - one, one, -B - one]
    elif variant == "second":
        mid = [A + one, -one, -B + one]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    tail = affine_tail(FormalCF(cf.entries[i + 2:], cf.field), -1, 0)
    return FormalCF(list(cf.entries[:i]) + mid + list(tail.entries), cf.field)


def shift_corollary(cf: FormalCF, x, variant: str = "head") -> FormalCF:
    """Move a constant ``x`` across a partial quotient.

    ``head``:  ``[A + x, beta]  ->  [A, 1/x, -x^2 beta - x]``
    ``split``: ``[A, x, beta]   ->  [A + 1/x, -x^2 beta - x]``
    """
    x = as_entry(x, cf.field)
    if x.is_zero():
        raise ValueError("shift_corollary needs x != 0")
    if not cf.entries:
        raise ValueError("shift_corollary needs a nonempty continued fraction")
    if variant == "head":
        head = [cf[0] - x, 1 / x]
        rest = cf.entries[1:]
    elif variant == "split":
        if len(cf) < 2:
            raise ValueError("split variant needs [A, x, ...]")
        if cf[1] != x:
            raise ValueError("second entry must equal x for the split variant")
        head = [cf[0] + 1 / x]
        rest = cf.entries[2:]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    tail = affine_tail(FormalCF(rest, cf.field), -x * x, -x)
    return FormalCF(head + list(tail.entries), cf.field)


def canonicalize(cf: FormalCF) -> ContinuedFraction:
    """Canonical expansion of the value of ``cf``."""
    v = fold(cf)
    return expand_rational(v.num, v.den)


__all__ = ["FormalCF", "FoldError", "fold", "affine_tail", "multiply_lemma",
           "multiply_lemma_sides", "negate_lemma", "shift_corollary",
           "canonicalize", "as_entry"]
