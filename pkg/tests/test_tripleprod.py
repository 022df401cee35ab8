"""The infinite product, the negative-index tail, and their difference."""

import mpmath as mp
import pytest

from conftest import assert_covers
from ptheta.core import theta_certified
from ptheta.errors import DomainError
from ptheta.oracle import g_ref, theta_ref, theta_star_ref
from ptheta.tripleprod import g_tail, jacobi_theta_star, theta_via_triple_product

THETA_STAR_HALF_TWO = mp.mpf("3.283265121310307732588")
G_HALF_TWO = mp.mpf("0.6416325606551538662938")


class TestProduct:
    def test_reference_point(self):
        assert_covers(jacobi_theta_star(0.5, 2.0, 1e-14), THETA_STAR_HALF_TWO)

    def test_exact_zero_at_minus_one(self):
        cv = jacobi_theta_star(0.5, -1.0)
        assert cv.value == 0.0 and cv.err == 0.0

    def test_near_zero_at_negative_integer_power(self):
        # x = -q^{-a} with integer a kills one factor
        for a in (1, 2):
            q = 0.6
            cv = jacobi_theta_star(q, -(q ** -a), 1e-13)
            assert abs(cv.value) < 1e-10

    def test_negative_q_matches_two_sided_sum(self):
        for q, x in [(-0.6, 2.5), (-0.9, -3.0)]:
            assert_covers(jacobi_theta_star(q, x, 1e-14), theta_star_ref(q, x))

    def test_complex_argument(self):
        z = complex(1.5, 2.0)
        cv = jacobi_theta_star(0.7, z, 1e-14)
        ref = theta_star_ref(0.7, mp.mpc(z))
        assert abs(mp.mpc(cv.value) - ref) <= cv.err

    def test_rejects_zero_x(self):
        with pytest.raises(DomainError):
            jacobi_theta_star(0.5, 0.0)


class TestTail:
    def test_reference_point(self):
        assert_covers(g_tail(0.5, 2.0, 1e-14), G_HALF_TWO)

    def test_leibniz_interval_at_minus6(self):
        # alternating tail at x = -6: between -1/6 and -1/6 + q/36
        for q in (0.2, 0.5, 0.9, 0.99):
            cv = g_tail(q, -6.0, 1e-14, q_max=0.99)
            assert -1.0 / 6.0 < cv.real < -1.0 / 6.0 + q / 36.0

    def test_q_zero_gives_inverse(self):
        cv = g_tail(0.0, 4.0)
        assert cv.value == 0.25

    def test_rejects_zero_x(self):
        with pytest.raises(DomainError):
            g_tail(0.5, 0.0)

    def test_negative_q(self):
        assert_covers(g_tail(-0.7, 3.0, 1e-14), g_ref(-0.7, 3.0))


class TestSplit:
    @pytest.mark.parametrize("q,x", [(0.5, 2.0), (0.9, -6.0), (0.3, 0.5),
                                     (0.7, complex(2, 2))])
    def test_difference_equals_direct(self, q, x):
        parts = theta_via_triple_product(q, x, 1e-14)
        direct = theta_certified(q, x, 1e-13)
        diff = abs(complex(parts.difference.value) - complex(direct.value))
        assert diff <= parts.difference.err + direct.err

    def test_minus_one_reduces_to_tail(self):
        # the product vanishes at x = -1, so theta = -G there
        parts = theta_via_triple_product(0.8, -1.0, 1e-14)
        assert parts.theta_star.value == 0.0
        direct = theta_certified(0.8, -1.0, 1e-13)
        diff = abs(direct.value + parts.g_tail.real)
        assert diff <= direct.err + parts.g_tail.err

    def test_high_q_agreement(self):
        parts = theta_via_triple_product(0.9, -6.0, 1e-14)
        assert_covers(parts.difference, theta_ref(0.9, -6.0))
