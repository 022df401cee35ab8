"""Truncation orders, error bookkeeping, and the CertifiedValue contract."""

import math

import pytest

from ptheta.certified import (
    CertifiedValue,
    Parameter,
    SeriesTerm,
    derivative_truncation,
    tri,
    truncation_order,
)
from ptheta.errors import DomainError, IndeterminateSignError, InfeasibleToleranceError


def tail_direct(q, x, n):
    # first omitted term over 1 - ratio, straight from the definition
    return q ** tri(n + 1) * x ** (n + 1) / (1.0 - q ** (n + 2) * x)


class TestTruncationOrder:
    def test_zero_x(self):
        assert truncation_order(0.5, 0.0, 1e-30) == (0, 0.0)

    def test_known_high_precision_case(self):
        # q = 0.95, x = 6: order ~100 drives the tail below 1e-30
        n, tail = truncation_order(0.95, 6.0, 1e-30)
        assert n <= 100
        assert tail <= 1e-30
        assert 0.95 ** (n + 1) * 6.0 <= 0.5
        # at order exactly 100 the first omitted term is ~7e-37
        t101 = 101 * math.log(6.0) + tri(101) * math.log(0.95)
        assert 1e-37 < math.exp(t101) < 1e-36

    def test_second_margin_case(self):
        # q = 0.97, x = 2.4: order 100 meets both conditions for 1e-29
        n, tail = truncation_order(0.97, 2.4, 1e-29)
        assert n <= 100
        assert 0.97 ** 101 * 2.4 <= 0.5
        assert tail_direct(0.97, 2.4, 100) < 1e-29

    @pytest.mark.parametrize("q,x,tol", [(0.3, 5.0, 1e-10), (0.9, 1.5, 1e-13),
                                         (0.5, 100.0, 1e-8), (0.05, 1e6, 1e-12)])
    def test_minimality_and_postconditions(self, q, x, tol):
        n, tail = truncation_order(q, x, tol)
        assert q ** (n + 1) * x <= 0.5
        assert tail <= tol * 1.001
        assert tail_direct(q, x, n) <= tol
        if n > 0:
            ratio_ok = q**n * x <= 0.5
            prev_ok = ratio_ok and tail_direct(q, x, n - 1) <= tol
            assert not prev_ok, "returned order is not minimal"

    def test_q_at_or_above_one_rejected(self):
        with pytest.raises(DomainError):
            truncation_order(1.0, 2.0, 1e-10)

    def test_infeasible_tolerance(self, monkeypatch):
        monkeypatch.setenv("THETA_MAX_N", "40")
        with pytest.raises(InfeasibleToleranceError):
            truncation_order(0.99, 6.0, 1e-30)

    def test_exact_exponent_at_2000(self):
        assert tri(2000) == 2000 * 2001 // 2 == 2001000


class TestDerivativeTruncation:
    @pytest.mark.parametrize("m,nq", [(1, 0), (2, 0), (4, 0), (0, 1), (0, 2), (2, 1)])
    def test_tail_dominates_brute_force(self, m, nq):
        from ptheta.certified import deriv_coeff

        q, x = 0.8, 4.0
        n, tail = derivative_truncation(q, x, m, nq, 1e-12)
        brute = sum(
            deriv_coeff(j, m, nq) * q ** (tri(j) - nq) * x ** (j - m)
            for j in range(n + 1, n + 400)
        )
        assert brute <= tail <= 1e-12 * 1.001


class TestCertifiedValue:
    def test_sign_decisions(self):
        assert CertifiedValue(2.0, 0.5).sign() == 1
        assert CertifiedValue(-2.0, 0.5).sign() == -1
        with pytest.raises(IndeterminateSignError):
            CertifiedValue(0.3, 0.5).sign()

    def test_comparisons(self):
        cv = CertifiedValue(1.0, 0.1)
        assert cv.definitely_greater(0.5)
        assert not cv.definitely_greater(0.95)
        assert cv.definitely_less(1.5)
        assert cv.is_indeterminate_vs(1.05)

    def test_arithmetic_propagates_err(self):
        a = CertifiedValue(1.0, 1e-10)
        b = CertifiedValue(2.0, 1e-12)
        assert (a + b).err >= 1e-10 + 1e-12
        assert (a - b).err >= 1e-10 + 1e-12
        assert a.scaled(10.0).err >= 1e-9
        assert a.mul(b).err >= 2e-10

    def test_err_must_be_finite_nonnegative(self):
        with pytest.raises(ValueError):
            CertifiedValue(1.0, -1e-3)
        with pytest.raises(ValueError):
            CertifiedValue(1.0, math.inf)


class TestParameter:
    def test_cases(self):
        assert Parameter(0.5).case == "A"
        assert Parameter(-0.5).case == "B"

    @pytest.mark.parametrize("bad", [0.0, 1.0, -1.0, 1.5, float("nan")])
    def test_rejects_out_of_domain(self, bad):
        with pytest.raises(DomainError):
            Parameter(bad)


class TestSeriesTerm:
    def test_exact_exponent(self):
        t = SeriesTerm.at(2000, 0.99)
        assert t.exponent == 2001000
        assert t.coefficient == 0.99**2001000

    def test_rejects_drifted_exponent(self):
        with pytest.raises(DomainError):
            SeriesTerm(j=3, exponent=7, coefficient=0.5)
