import random
from fractions import Fraction

import pytest

from cfreduce.algebra import GF, QQ, QQt, Poly, RationalFunction
from cfreduce.cf import Convergent, convergents, expand_series, expand_surd
from cfreduce.reduction import (BadReduction, BadSpecialization, ParamPoint,
                                blowup_primes,
                                normalize_convergent, reduce_mod_p,
                                reduction_defect, specialize,
                                verify_reduction_theorem)
from cfreduce.series import LaurentSeries, g3_series, series_sqrt
from cfreduce.transform import FormalCF
from conftest import random_reduction_case

X = Poly.gen(QQ)
Xt = Poly.gen(QQt)
t = QQt.t


def v_p(c: Fraction, p: int) -> int:
    """p-adic valuation, computed independently of the library."""
    n, d, k = c.numerator, c.denominator, 0
    while n % p == 0:
        n //= p
        k += 1
    while d % p == 0:
        d //= p
        k -= 1
    return k


# reduce_mod_p

def test_reduce_polynomial(d_generic):
    assert reduce_mod_p(d_generic, 7) == Poly([2, 2, 3, 5, 1], GF(7))


@pytest.mark.parametrize("h, p", [(2, 3), (2, 7), (5, 5), (6, 11)])
def test_partial_quotient_blowups(d_generic, h, p):
    cf, _ = expand_surd(d_generic, 7)
    with pytest.raises(BadReduction) as exc:
        reduce_mod_p(cf[h], p)
    assert exc.value.target == p
    with pytest.raises(BadReduction) as exc:
        reduce_mod_p(cf, p)
    assert exc.value.index is not None and exc.value.index <= h


def test_series_reduces_while_quotient_blows_up(d_generic):
    f = series_sqrt(d_generic, 20)
    fbar = reduce_mod_p(f, 7)
    assert fbar.field is GF(7) and fbar.prec == 20


def test_reduce_cf_reports_index(d_generic):
    cf, _ = expand_surd(d_generic, 4)
    with pytest.raises(BadReduction) as exc:
        reduce_mod_p(cf, 7)
    assert exc.value.index == 2


# specialise

def test_specialize_coefficients():
    one_minus_2t = QQ.coerce(1)
    c = QQt.sub(QQt.one, QQt.mul(QQt.coerce(2), t))
    assert specialize(Poly([c], QQt), 0) == Poly([one_minus_2t], QQ)
    with pytest.raises(BadSpecialization):
        specialize(Poly([QQt.inv(t)], QQt), 0)
    # (t^2 - t) / t is stored reduced, so t -> 0 is fine
    c = QQt.div(QQt.sub(QQt.mul(t, t), t), t)
    assert specialize(Poly([c], QQt), 0) == Poly([-1], QQ)


def test_specialize_collapse_quotient():
    # (1/a) X - b/a^2 with a = t blows up at t = 0
    b = QQt.coerce(3)
    a1 = Poly([QQt.neg(QQt.div(b, QQt.mul(t, t))), QQt.inv(t)], QQt)
    with pytest.raises(BadSpecialization):
        specialize(a1, 0)
    assert specialize(a1, 1) == Poly([-3, 1], QQ)


def test_specialize_needs_parametric_input(d_generic):
    with pytest.raises(TypeError):
        specialize(d_generic, 0)


# normalisation

def test_normalize_integral_convergent():
    r = normalize_convergent(Convergent(X + 3, X.scale(2), 1), 5)
    assert r.shift == 0 and r.normalizer == "1"
    assert (r.x, r.y) == (Poly([3, 1], GF(5)), Poly([0, 2], GF(5)))


def test_normalize_constructed_valuation():
    x = Poly([1, Fraction(1, 7)], QQ)
    y = Poly([0, Fraction(1, 49)], QQ)
    r = normalize_convergent(Convergent(x, y, 0), 7)
    assert r.shift == -2 and r.normalizer == "7^2"
    assert not r.x and r.y == Poly([0, 1], GF(7))


def _min_valuation(conv, p):
    return min(v_p(c, p) for c in conv.x.coeffs + conv.y.coeffs)


def test_normalizer_minimality(d_generic):
    cf, _ = expand_surd(d_generic, 9)
    for p in (5, 7, 11, 13):
        for conv in convergents(cf):
            r = normalize_convergent(conv, p)
            assert r.shift == _min_valuation(conv, p)
            assert r.x or r.y
            # one more factor of p leaves a non-integral coefficient
            assert any(v_p(c, p) - r.shift - 1 < 0 for c in conv.x.coeffs + conv.y.coeffs)
            # one factor fewer kills everything
            assert all(v_p(c, p) - r.shift + 1 > 0 for c in conv.x.coeffs + conv.y.coeffs)


# the verifier

def test_verify_mod7_collapse(d_generic):
    rep = verify_reduction_theorem(d_generic, 7, depth=9)
    assert rep.passed
    assert rep.collapse_classes == [(1, 2), (4, 5), (7, 8)]
    assert 2 in rep.blowups


def test_verify_periodic_mod5(d_periodic):
    rep = verify_reduction_theorem(d_periodic, 5, depth=10)
    assert rep.passed and rep.collapse_classes == [] and not rep.blowups
    assert rep.matched == 11


def test_verify_g3_mod3():
    rep = verify_reduction_theorem(g3_series(60), 3, depth=20)
    assert rep.passed and rep.collapse_classes == [] and rep.matched == 21


def test_verify_bad_targets(d_generic):
    rep = verify_reduction_theorem(d_generic, 2)
    assert not rep.passed and "characteristic 2" in rep.note
    rep = verify_reduction_theorem(d_generic + Fraction(1, 3), 3)
    assert not rep.passed and "does not exist" in rep.note


def test_verify_parametric_surd():
    d = Xt**4 + Xt * t + 1
    rep = verify_reduction_theorem(d, ParamPoint(0), depth=5)
    assert rep.passed and rep.collapse_classes == [(0, 1), (2, 3), (4, 5)]
    assert rep.reduced[1].shift == 2 and rep.reduced[1].normalizer == "t^-2"


def test_verify_collapse_form():
    b, c, d = map(Fraction, (3, 5, 7))
    q = Poly([(c * c - b * d) / b**3, -c / b**2, 1 / b], QQt)
    cf = FormalCF([RationalFunction(Poly([t], QQt), Xt), q, Xt + 3], QQt)
    rep = verify_reduction_theorem(cf, Fraction(0), depth=10)
    assert rep.passed and rep.collapse_classes == [(0, 1), (3, 4)]


def test_determinant_survives_reduction(d_generic):
    for p in (5, 7, 11):
        rep = verify_reduction_theorem(d_generic, p, depth=10)
        assert rep.passed
        for a, b in zip(rep.reduced, rep.reduced[1:]):
            det = a.x * b.y - b.x * a.y
            assert det.deg == 0  # a unit: +-1 up to the normalising scalars
        for k in range(1, len(rep.direct)):
            u, w = rep.direct[k - 1], rep.direct[k]
            assert u.x * w.y - w.x * u.y == Poly([(-1) ** k], GF(p))


def test_reduction_fuzz_small():
    rng = random.Random(21)
    for _ in range(40):
        d, p = random_reduction_case(rng, rng.choice([4, 6]))
        rep = verify_reduction_theorem(d, p, depth=8)
        assert rep.passed, (str(d), p, rep.note)


def test_reduction_of_random_series():
    rng = random.Random(8)
    for _ in range(20):
        coeffs = [Fraction(rng.randint(-30, 30), rng.choice([1, 1, 2, 3])) for _ in range(40)]
        coeffs[0] = Fraction(1)
        f = LaurentSeries.from_coeffs(coeffs, 1, QQ, prec=40)
        rep = verify_reduction_theorem(f, 5, depth=6)
        assert rep.passed, rep.note


# blowups and screening

def test_blowup_primes(d_generic):
    cf, _ = expand_surd(d_generic, 7)
    bp = blowup_primes(cf, 6)
    assert {3, 7} <= bp[2] and 5 in bp[5] and 11 in bp[6]
    assert bp[0] == set()
    assert blowup_primes(expand_surd(X**2 + 2 * X + 7, 1)[0]) == {0: set()}


def test_reduction_defect(d_generic):
    assert reduction_defect(d_generic, 2) == "characteristic 2"
    assert reduction_defect(d_generic, 3) == "discriminant"
    assert reduction_defect(d_generic, 31) == "discriminant"
    assert reduction_defect(d_generic, 5) is None
    assert reduction_defect(d_generic + Fraction(1, 5), 5) == "coefficient denominator"


def test_param_point_text():
    assert str(ParamPoint(Fraction(1, 2))) == "t=1/2"
