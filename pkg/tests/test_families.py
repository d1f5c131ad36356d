import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfreduce.algebra import GF, QQ, Poly
from cfreduce.cf import expand_surd
from cfreduce.families import (INF, FamilyParams, RegulatorResult, SUPPORTED_M,
                               closed_form_quotients, compatible,
                               quotient_closed_forms, regulator,
                               regulator_sweep, s_sequence, torsion_condition,
                               yu_certificate)

F = Fraction
X = Poly.gen(QQ)


def test_s_sequence_start():
    p = FamilyParams.from_vw(3, F(1, 4))
    s = s_sequence(p, 4)
    assert s.values[:4] == [0, INF, 1, F(6)]
    assert s[4] == F(3) / (F(6) * 5 * 1)


def test_s_sequence_terminal_at_half():
    s = s_sequence(FamilyParams.from_vw(5, F(1, 2)), 10)
    assert s.terminal == 3 and s[3] is INF


def test_s_sequence_terminal_for_m5():
    s = s_sequence(FamilyParams.from_vw(1, 0), 10)
    assert s[3] == 1 and s.terminal == 4 and s[4] is INF


def test_unnormalised_rejected():
    with pytest.raises(ValueError):
        s_sequence(FamilyParams(1, 2, 3), 4)
    with pytest.raises(ValueError):
        FamilyParams(1, 0, 0)


def test_first_closed_forms():
    p = FamilyParams.from_vw(F(7, 3), F(-2, 5))
    (b1, c1), (b2, c2), (b3, c3) = quotient_closed_forms(s_sequence(p, 3), p, 3)
    assert (b1, c1) == (4 * p.v, p.w)
    assert b2 == 1
    assert b3 == 4 * (1 - 2 * p.w)
    a = closed_form_quotients(p, 3)
    assert a[0] == X * X + p.u


def _surd_agrees(p, n):
    a = closed_form_quotients(p, n)
    cf, _ = expand_surd(p.quartic(), n + 1)
    return list(cf.entries[: n + 1]) == a


def test_closed_forms_match_surd_random():
    rng = random.Random(5)
    checked = 0
    while checked < 100:
        v = F(rng.randint(-9, 9), rng.randint(1, 5))
        w = F(rng.randint(-9, 9), rng.randint(1, 5))
        if v == 0:
            continue
        p = FamilyParams.from_vw(v, w)
        n = min(6, s_sequence(p, 6).finite_upto())
        assert _surd_agrees(p, n), (v, w)
        checked += 1


def test_closed_forms_over_gf():
    for v, w in [(1, 8), (5, 1), (3, 2), (6, 4)]:
        p = FamilyParams.from_vw(v, w, GF(13))
        n = min(6, s_sequence(p, 6).finite_upto())
        assert _surd_agrees(p, n)


@given(st.fractions().filter(lambda x: x != 0), st.fractions())
def test_s_relation(v, w):
    p = FamilyParams.from_vw(v, w)
    s = s_sequence(p, 8).values
    for h in range(3, len(s) - 1):
        if s[h + 1] is INF:
            break
        assert s[h + 1] * s[h] * (s[h] - 1) * s[h - 1] == v


TORSION = [
    (4, FamilyParams.from_vw(5, F(1, 2))),
    (5, FamilyParams.from_vw(-1, 1)),
    (6, FamilyParams.from_vw(2, 0)),
    (7, FamilyParams.from_vw(4, F(-1, 2))),
    (8, FamilyParams.from_vw(3, F(-1, 4))),
    (3, FamilyParams(-4, 5, 2)),
    (11, FamilyParams.from_vw(1, 8, GF(13))),
    (11, FamilyParams.from_vw(5, 1, GF(13))),
]


@pytest.mark.parametrize("m, p", TORSION, ids=[f"m{m}-{i}" for i, (m, _) in enumerate(TORSION)])
def test_torsion_parameters(m, p):
    assert torsion_condition(m, p)
    r = regulator(p.quartic())
    assert r.status == "ok" and r.m == m


def test_m7_fails_at_random_parameters():
    rng = random.Random(7)
    for _ in range(50):
        v = F(rng.randint(1, 50), rng.randint(1, 9))
        w = F(rng.randint(-50, 50), rng.randint(1, 9))
        p = FamilyParams.from_vw(v, w)
        assert not torsion_condition(7, p)


def test_m2_never():
    for v, w in [(1, 0), (F(-3, 2), 4), (9, F(1, 3))]:
        assert torsion_condition(2, FamilyParams.from_vw(v, w)) is False


def test_unsupported_m():
    with pytest.raises(ValueError):
        torsion_condition(9, FamilyParams.from_vw(1, 0))
    assert 9 not in SUPPORTED_M


def test_regulator_sweep(d_generic):
    out = regulator_sweep(d_generic, [3, 5, 7, 11, 31])
    assert out[3].status == "bad" and out[3].reason == "discriminant"
    assert out[31].status == "bad"
    assert out[5].m == 6 and out[11].m == 7
    assert out[7].status == "ok"


def test_regulator_perfect_square():
    r = regulator(Poly([4, 0, 4, 0, 1], GF(7)))  # (X^2 + 2)^2
    assert r.status == "square"


def test_sweep_rejects_bad_input():
    with pytest.raises(TypeError):
        regulator_sweep(Poly([1, 0, 1], GF(5)), [3])
    with pytest.raises(ValueError):
        regulator_sweep(X**3 + 1, [3])


def test_compatible():
    assert compatible(5, 3, 7, 15)  # 3 * 5 = 15 * 7^0
    assert not compatible(5, 6, 11, 7)
    assert not compatible(7, 3, 5, 6)


def test_yu_witness_valuation():
    c = yu_certificate({7: 3, 5: 6})
    assert c.verdict == "non-periodic" and c.witness == 2 and c.witness_kind == "valuation"


def test_yu_certificate_from_sweep():
    c = yu_certificate({5: 6, 11: 7})
    assert c.verdict == "non-periodic" and c.primes == (5, 11)
    assert c.witness in (2, 3, 7)


def test_yu_inconclusive():
    assert yu_certificate({5: 6, 13: 6}).verdict == "inconclusive"
    assert yu_certificate({5: 6}).verdict == "inconclusive"
    assert yu_certificate({5: RegulatorResult("bad"), 7: 3}).verdict == "inconclusive"


@pytest.mark.parametrize("m, p", [t for t in TORSION if t[1].field is QQ])
def test_yu_sound_on_torsion(m, p):
    """Periodic inputs must never be certified non-periodic."""
    regs = regulator_sweep(p.quartic(), [3, 5, 7, 11, 13, 17, 19, 23])
    assert yu_certificate(regs).verdict == "inconclusive"
