"""Error-free transformation primitives: exactness and DD accuracy."""

import random
from fractions import Fraction

import pytest

from ptheta.ddarith import (
    cdd_add,
    cdd_from,
    cdd_hi,
    cdd_inv,
    cdd_mul,
    dd_add,
    dd_div,
    dd_from_int,
    dd_mul,
    dd_pow_int,
    dd_sqrt,
    quick_two_sum,
    two_prod,
    two_sum,
)

random.seed(42)


def rnd():
    return random.uniform(-1, 1) * 10 ** random.randint(-10, 10)


@pytest.mark.parametrize("trial", range(200))
def test_two_sum_exact(trial):
    a, b = rnd(), rnd()
    s, e = two_sum(a, b)
    assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)


@pytest.mark.parametrize("trial", range(200))
def test_two_prod_exact(trial):
    a, b = rnd(), rnd()
    p, e = two_prod(a, b)
    assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)


def test_dd_add_mul_accuracy():
    # addition is absolutely accurate to ~eps^2 (|a| + |b|) -- cancellation
    # shrinks the result, not the bound; multiplication is relatively accurate
    for _ in range(100):
        a, c = rnd(), rnd()
        b = a * random.uniform(-1, 1) * 2**-53
        d = c * random.uniform(-1, 1) * 2**-53
        sh, sl = dd_add(a, b, c, d)
        exact = Fraction(a) + Fraction(b) + Fraction(c) + Fraction(d)
        got = Fraction(sh) + Fraction(sl)
        scale = Fraction(abs(a)) + Fraction(abs(c))
        assert abs(got - exact) <= scale / 2**100
        ph, pl = dd_mul(a, b, c, d)
        exact = (Fraction(a) + Fraction(b)) * (Fraction(c) + Fraction(d))
        got = Fraction(ph) + Fraction(pl)
        if exact:
            assert abs((got - exact) / exact) < Fraction(1, 2**98)


def test_dd_div_and_sqrt():
    h, l = dd_div(1.0, 0.0, 3.0, 0.0)
    third = Fraction(h) + Fraction(l)
    assert abs(third - Fraction(1, 3)) < Fraction(1, 2**100)
    h, l = dd_sqrt(2.0, 0.0)
    two = (Fraction(h) + Fraction(l)) ** 2
    assert abs(two - 2) < Fraction(1, 2**96)


def test_dd_pow_int_matches_fraction():
    h, l = dd_pow_int(0.7, 0.0, 41)
    exact = Fraction(0.7) ** 41
    got = Fraction(h) + Fraction(l)
    assert abs((got - exact) / exact) < Fraction(1, 2**95)


def test_dd_from_int_exact():
    n = 3**33  # needs more than 53 bits
    h, l = dd_from_int(n)
    assert int(Fraction(h) + Fraction(l)) == n


def test_cdd_mul_matches_complex():
    for _ in range(100):
        z1 = complex(rnd(), rnd())
        z2 = complex(rnd(), rnd())
        prod = cdd_hi(cdd_mul(cdd_from(z1), cdd_from(z2)))
        assert abs(prod - z1 * z2) <= 1e-15 * abs(z1) * abs(z2)


def test_cdd_inv():
    z = complex(3.0, -4.0)
    w = cdd_hi(cdd_inv(cdd_from(z)))
    assert abs(w - 1.0 / z) < 1e-17


def test_quick_two_sum_ordering():
    s, e = quick_two_sum(1.0, 2**-60)
    assert s == 1.0 and e == 2**-60
