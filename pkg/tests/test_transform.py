from fractions import Fraction

import pytest

from cfreduce.algebra import GF, QQ, Poly, RationalFunction
from cfreduce.cf import expand_rational
from cfreduce.series import LaurentSeries
from cfreduce.transform import (FoldError, FormalCF, affine_tail, as_entry,
                                canonicalize, fold, multiply_lemma,
                                multiply_lemma_sides, negate_lemma,
                                shift_corollary)
from transform_cases import (FIELDS, continuants, rand_nonzero, random_formal_cfs,
                             same_value, value_preserved)

X = Poly.gen(QQ)
R = RationalFunction


def fcf(*entries, field=QQ):
    return FormalCF(entries, field)


# fold

def test_fold_examples():
    assert fold(fcf(X, X)) == R(X**2 + 1, X)
    assert fold(fcf(0, R(Poly([1], QQ), X))) == R(X)
    with pytest.raises(FoldError):
        fold(fcf(X, 0))
    with pytest.raises(FoldError):
        fold(fcf())


@pytest.mark.parametrize("a, b, c, d", [(2, 3, 5, 7), (1, -1, 4, 2), (Fraction(1, 3), 5, -2, 9)])
def test_fold_of_collapse_form(a, b, c, d):
    a, b, c, d = map(Fraction, (a, b, c, d))
    q = Poly([(c * c - b * d) / b**3, -c / b**2, 1 / b], QQ)
    v = fold(fcf(R(Poly([a], QQ), X), q))
    s = LaurentSeries.from_rational(v.num, v.den, 6)
    assert [s.coeff(-k) for k in range(1, 5)] == [a, b, c, d]


# lemmas: examples

def test_multiply_examples():
    cf = fcf(X, X)
    assert fold(multiply_lemma(cf, 3, 3)) == fold(cf)
    assert fold(multiply_lemma(cf, 1, 2)) == fold(cf) * R(Poly([2], QQ))
    five = fcf(X, X + 1, X.scale(2), Fraction(1, 2), X - 3)
    left, right = multiply_lemma_sides(five, 3, 5)
    assert [str(e) for e in left.entries][:2] == ["5*X", "3*X + 3"]
    assert fold(left) * as_entry(3, QQ) == fold(right) * as_entry(5, QQ)
    assert fold(multiply_lemma(five, 3, 5)) == fold(five) * as_entry(Fraction(5, 3), QQ)
    with pytest.raises(ValueError):
        multiply_lemma(five, 0, 1)


def test_negate_examples():
    cf = fcf(X**2, X, X)
    first = negate_lemma(cf, 1, "first")
    assert first == fcf(X**2, X - 1, 1, -X - 1)
    second = negate_lemma(cf, 1, "second")
    assert second == fcf(X**2, X + 1, -1, -X + 1)
    assert fold(first) == fold(cf) == fold(second)
    assert negate_lemma(fcf(X, X + 2), 0) == fcf(X - 1, 1, -X - 3)
    with pytest.raises(IndexError):
        negate_lemma(cf, 2)


def test_shift_examples():
    cf = fcf(X + 1, X)
    out = shift_corollary(cf, 1, "head")
    assert out == fcf(X, 1, -X - 1) and fold(out) == fold(cf)
    cf = fcf(X, 2, X)
    out = shift_corollary(cf, 2, "split")
    assert out == fcf(X + Fraction(1, 2), X.scale(-4) - 2) and fold(out) == fold(cf)
    with pytest.raises(ValueError):
        shift_corollary(cf, 0)
    with pytest.raises(ValueError):
        shift_corollary(cf, 3, "split")


def test_affine_examples():
    cf = fcf(X, X)
    assert affine_tail(cf, 1, 0) == cf
    assert fold(affine_tail(cf, -1, 0)) == -R(X**2 + 1, X)
    x = Fraction(3)
    tail = fcf(X + 2, X)
    assert fold(affine_tail(tail, -x * x, -x)) == fold(tail) * as_entry(-x * x, QQ) - as_entry(x, QQ)
    with pytest.raises(ValueError):
        affine_tail(cf, 0, 1)


# lemmas: randomized, 1000 cases per field and operation.  Values are
# compared through continuants, which stay defined when a rewrite creates a
# vanishing intermediate tail; strict folds are compared whenever both exist.

def _const(F, c):
    return as_entry(c, F)


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_multiply_preserves_value(F):
    for cf, rng in random_formal_cfs(F, 1000, 1):
        B, C = rand_nonzero(rng, F), rand_nonzero(rng, F)
        out = multiply_lemma(cf, B, C)
        ratio = _const(F, C) / _const(F, B)
        assert value_preserved(out, cf, scale=ratio)
        left, right = multiply_lemma_sides(cf, B, C)
        assert value_preserved(left, right, scale=ratio)


@pytest.mark.parametrize("F", FIELDS, ids=str)
@pytest.mark.parametrize("variant", ["first", "second"])
def test_negate_preserves_value(F, variant):
    for cf, rng in random_formal_cfs(F, 1000, 2):
        i = rng.randrange(len(cf) - 1)
        out = negate_lemma(cf, i, variant)
        assert value_preserved(out, cf)


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_shift_preserves_value(F):
    for cf, rng in random_formal_cfs(F, 1000, 3):
        x = rand_nonzero(rng, F)
        out = shift_corollary(cf, x, "head")
        assert value_preserved(out, cf)
        split = FormalCF([cf[0], x] + list(cf.entries[1:]), F)
        out = shift_corollary(split, x, "split")
        assert value_preserved(out, split)


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_affine_tail_contract(F):
    for cf, rng in random_formal_cfs(F, 1000, 4):
        c, d = rand_nonzero(rng, F), F.coerce(rng.randrange(-3, 4))
        out = affine_tail(cf, c, d)
        assert fold(out) == fold(cf) * _const(F, c) + _const(F, d)


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_canonicalize_preserves_value_and_is_idempotent(F):
    for cf, _ in random_formal_cfs(F, 300, 5):
        can = canonicalize(cf)
        assert can.is_canonical()
        again = canonicalize(FormalCF.from_cf(can))
        assert list(again) == list(can)
        v = fold(cf)
        assert list(can) == list(expand_rational(v.num, v.den))


# the collapse computation

def collapse_form(a, b, c, d, field=QQ):
    F = field
    q = Poly([F.div(F.sub(F.mul(c, c), F.mul(b, d)), F.mul(b, F.mul(b, b))),
              F.neg(F.div(c, F.mul(b, b))), F.inv(b)], F)
    head = R(Poly([a], F), Poly.gen(F)) if not F.is_zero(a) else R(Poly([], F))
    return FormalCF([head, q, Poly.gen(F) + 3], F), q


def test_canonicalize_collapse_form():
    a, b, c, d = map(Fraction, (2, 3, 5, 7))
    cf, q = collapse_form(a, b, c, d)
    can = canonicalize(cf)
    assert can[0] == Poly([], QQ)
    assert can[1] == Poly([-b / a**2, 1 / a], QQ)
    disc = b * b - a * c
    assert can[2] == Poly([a * a * (a * a * d - 2 * a * b * c + b**3) / disc**2, a**3 / disc], QQ)


def test_canonicalize_collapse_form_at_a_zero():
    cf, q = collapse_form(Fraction(0), Fraction(3), Fraction(5), Fraction(7))
    can = canonicalize(cf)
    assert list(can)[:2] == [Poly([], QQ), q]


def test_canonicalize_canonical_input():
    cf = expand_rational(X**4 + 3 * X + 1, X**2 + 2)
    assert list(canonicalize(FormalCF.from_cf(cf))) == list(cf)


def test_rewrite_through_vanishing_tail():
    # input folds, but the rewrite's tail [-X - 1, 1/(X + 1)] is identically 0
    beta = R(Poly([-1], QQ), X + 1)
    cf = fcf(X**2, X, beta)
    out = negate_lemma(cf, 0, "first")
    assert fold(cf) == R(X**2 - 1)
    with pytest.raises(FoldError):
        fold(out)
    assert same_value(out, cf)
    x, y = continuants(fcf(X, 1, -1))
    assert not y  # infinite value


def test_field_mismatch():
    with pytest.raises(TypeError):
        FormalCF([Poly([1, 1], GF(5))], QQ)
