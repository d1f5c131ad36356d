import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from cfreduce.algebra import GF, QQ, Poly, discriminant, is_prime
from cfreduce.reduction import reduction_defect

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

D_PERIODIC = "X^4 - 2*X^3 + 3*X^2 + 2*X + 1"
D_GENERIC = "X^4 - 2*X^3 + 3*X^2 + 2*X + 2"


def poly_qq(coeffs):
    return Poly([Fraction(c) for c in coeffs], QQ)


@pytest.fixture
def d_periodic():
    return poly_qq([1, 2, 3, -2, 1])


@pytest.fixture
def d_generic():
    return poly_qq([2, 2, 3, -2, 1])


fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20)
nonzero_fractions = fractions.filter(lambda x: x != 0)


def rational_polys(max_deg=5, nonzero=False):
    s = st.lists(fractions, min_size=0, max_size=max_deg + 1).map(poly_qq)
    return s.filter(bool) if nonzero else s


def gf_polys(p, max_deg=5, nonzero=False):
    s = st.lists(st.integers(0, p - 1), max_size=max_deg + 1).map(lambda c: Poly(c, GF(p)))
    return s.filter(bool) if nonzero else s


def random_monic(rng: random.Random, deg: int, field=QQ, lo=-20, hi=20):
    coeffs = [rng.randint(lo, hi) for _ in range(deg)] + [1]
    return Poly(coeffs, field)


ODD_PRIMES = [p for p in range(3, 98) if is_prime(p)]


def random_reduction_case(rng: random.Random, deg: int):
    """A random monic D over Z with a random odd good prime p <= 97.

    D with a repeated factor has no good prime at all, so it is redrawn.
    """
    while True:
        d = random_monic(rng, deg)
        if discriminant(d) != 0:
            break
    while True:
        p = rng.choice(ODD_PRIMES)
        if reduction_defect(d, p) is None:
            return d, p
