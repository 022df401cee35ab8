"""Evaluation, derivatives, identities, diagonals, and limit comparisons."""

import math

import mpmath as mp
import pytest

from conftest import assert_covers
from ptheta.core import (
    decompose,
    functional_equation_residual,
    inside_contour,
    katsnelson_residual,
    mixed_identity_residuals,
    nu,
    pde_residual,
    phi,
    theta_at_diagonal,
    theta_certified,
    theta_derivative,
)
from ptheta.errors import ContourError, DomainError
from ptheta.oracle import theta_deriv_ref, theta_ref

# 50-digit direct-summation references
THETA_HALF_ONE = mp.mpf("1.641632560655153866294")
THETA_MHALF_TWO = mp.mpf("-0.3603815995302568075818")
THETA_MHALF_1P5 = mp.mpf("0.02619111234604077845832")
PHI2_HALF = mp.mpf("0.7793569639034671481519")
NU_QUARTER = mp.mpf("0.5605621040012902511762")
THETA_XX_03_M1 = mp.mpf("0.04969657213557451691673")


class TestEvaluation:
    def test_exact_shortcuts(self):
        assert theta_certified(0.0, 3.0) == theta_certified(0.5, 0.0)
        cv = theta_certified(0.5, 0.0)
        assert cv.value == 1.0 and cv.err == 0.0

    def test_reference_point(self):
        cv = theta_certified(0.5, 1.0, 1e-15)
        assert_covers(cv, THETA_HALF_ONE)
        assert cv.err < 1e-14

    def test_negative_q_at_inverse(self):
        # x = -1/q with q = -0.5 lands on a certified negative value
        cv = theta_certified(-0.5, 2.0, 1e-13)
        assert cv.definitely_less(0.0)
        assert_covers(cv, THETA_MHALF_TWO)

    def test_routes_agree_with_reference(self):
        for q, x in [(0.95, -6.0), (0.99, -6.0), (-0.98, -2.0), (0.9, -10.0),
                     (0.6, 8.0), (-0.9, 3.5)]:
            cv = theta_certified(q, x, 1e-13)
            assert_covers(cv, theta_ref(q, x))

    def test_forced_strategies_agree(self):
        direct = theta_certified(0.9, -6.0, 1e-13, strategy="direct")
        product = theta_certified(0.9, -6.0, 1e-13, strategy="product")
        assert abs(direct.value - product.value) <= direct.err + product.err

    def test_err_monotone_under_tol_halving(self):
        ref = theta_ref(0.8, -4.5)
        errs = []
        for tol in (1e-6, 5e-7, 2.5e-7, 1e-9, 1e-12):
            cv = theta_certified(0.8, -4.5, tol)
            errs.append(abs(mp.mpf(cv.value) - ref))
        assert all(b <= a * 1.0001 + 1e-18 for a, b in zip(errs, errs[1:]))

    def test_q_out_of_range(self):
        with pytest.raises(DomainError):
            theta_certified(0.995, 1.0)
        with pytest.raises(DomainError):
            theta_certified(1.2, 1.0)

    def test_complex_argument(self):
        cv = theta_certified(0.7, complex(2.0, 3.0), 1e-13)
        ref = theta_ref(0.7, mp.mpc(2.0, 3.0))
        assert abs(mp.mpc(cv.value) - ref) <= cv.err


class TestDerivatives:
    def test_x_derivative_at_zero_is_q(self):
        assert theta_derivative(0.5, 0.0, dx_order=1).value == 0.5

    def test_q_derivative_at_zero_vanishes(self):
        assert theta_derivative(0.5, 0.0, dq_order=1).value == 0.0

    def test_xx_at_zero(self):
        cv = theta_derivative(0.4, 0.0, dx_order=2)
        assert cv.value == pytest.approx(2 * 0.4**3, abs=1e-15)

    def test_second_derivative_reference(self):
        cv = theta_derivative(0.3, -1.0, dx_order=2, tol=1e-14)
        assert cv.definitely_greater(0.0)
        assert_covers(cv, THETA_XX_03_M1)

    def test_mixed_reference(self):
        cv = theta_derivative(0.6, -2.0, dx_order=1, dq_order=1, tol=1e-13)
        assert_covers(cv, theta_deriv_ref(0.6, -2.0, 1, 1))

    def test_bad_orders(self):
        with pytest.raises(DomainError):
            theta_derivative(0.5, 1.0, dx_order=5)
        with pytest.raises(DomainError):
            theta_derivative(0.5, 1.0)


class TestIdentities:
    @pytest.mark.parametrize("q,x", [(0.5, 1.0), (-0.9, complex(3, 2)),
                                     (0.3, -8.0), (-0.4, 5.5)])
    def test_functional_equation(self, q, x):
        r = functional_equation_residual(q, x, 1e-13)
        assert abs(complex(r.value)) <= r.err

    def test_functional_equation_trivial(self):
        r = functional_equation_residual(0.7, 0.0)
        assert r.value == 0.0 and r.err == 0.0

    @pytest.mark.parametrize("q,x", [(0.4, -2.0), (-0.8, 1.2), (0.9, 4.0)])
    def test_pde(self, q, x):
        r = pde_residual(q, x, 1e-12)
        assert abs(complex(r.value)) <= r.err
        # the budget scales with the size of the combined derivative terms
        scale = abs(theta_derivative(q, x, dq_order=1, tol=1e-8).real) * abs(2 * q)
        assert r.err < 1e-10 + 1e-13 * scale

    @pytest.mark.parametrize("q,x", [(0.6, -1.5), (-0.7, 2.0), (0.3, complex(1, 1))])
    def test_mixed(self, q, x):
        r1, r2 = mixed_identity_residuals(q, x, 1e-12)
        assert abs(complex(r1.value)) <= r1.err
        assert abs(complex(r2.value)) <= r2.err


class TestDecomposition:
    def test_trivial_x(self):
        d = decompose(0.5, 0.0)
        assert d.theta1.value == 1.0 and d.recombined.value == 1.0

    def test_both_parts_positive_deep_b(self):
        d = decompose(-0.98, -2.0, 1e-12)
        assert d.theta1.definitely_greater(0.0)
        qx_term = (-0.98) * (-2.0) * d.theta2.real
        assert qx_term > 0

    def test_recombination_matches_direct(self):
        for q, x in [(-0.5, 1.5), (0.7, -3.0), (-0.9, 2.2)]:
            d = decompose(q, x, 1e-12)
            direct = theta_certified(q, x, 1e-12)
            diff = abs(complex(d.recombined.value) - complex(direct.value))
            assert diff <= d.recombined.err + direct.err
        assert_covers(decompose(-0.5, 1.5).recombined, THETA_MHALF_1P5)


class TestDiagonals:
    def test_phi_at_q_zero(self):
        assert phi(0.0, 2.0).value == 1.0

    def test_phi_half_is_alternating_series(self):
        assert_covers(nu(0.25), NU_QUARTER)

    def test_phi2_reference(self):
        assert_covers(phi(0.5, 2.0, 1e-13), PHI2_HALF)

    def test_phi_rejects_bad_input(self):
        with pytest.raises(DomainError):
            phi(-0.5, 2.0)
        with pytest.raises(DomainError):
            phi(0.5, 0.3)

    def test_diagonal_changes_sign_in_gap(self):
        lo = theta_at_diagonal(0.1, 1.5)
        hi = theta_at_diagonal(0.9, 1.5)
        assert lo.definitely_less(0.0) and hi.definitely_greater(0.0)

    def test_diagonal_positive_at_integer(self):
        for q in (0.2, 0.6, 0.9):
            cv = theta_at_diagonal(q, 2.0)
            assert cv.definitely_greater(0.0)
            rhs = phi(q, 3.0).scaled(q**2)
            assert abs(cv.real - rhs.real) <= cv.err + rhs.err


class TestLimitComparison:
    def test_membership(self):
        assert inside_contour(0.0, "A")
        assert inside_contour(-3.0, "A")  # segment down to -e^pi
        assert not inside_contour(2.0, "A")
        assert not inside_contour(1.0, "A")  # boundary point
        assert inside_contour(1.2, "B")
        assert inside_contour(0.5, "B")

    def test_residual_zero_at_origin(self):
        assert katsnelson_residual(0.9, 0.0) == 0.0
        assert katsnelson_residual(-0.9, 0.0) == 0.0

    def test_case_a_decay(self):
        r1 = katsnelson_residual(0.99, -3.0)
        r2 = katsnelson_residual(0.999, -3.0)
        assert r2 < r1

    def test_case_a_near_limit(self):
        assert katsnelson_residual(0.999, 0.5) < 0.05

    def test_case_b_decay(self):
        r1 = katsnelson_residual(-0.99, 1.2)
        r2 = katsnelson_residual(-0.999, 1.2)
        assert r2 < r1 < 0.2

    def test_outside_raises(self):
        with pytest.raises(ContourError):
            katsnelson_residual(0.9, 2.0)
