"""Property-based invariants over random parameter/argument draws."""

import math

from hypothesis import given, settings, strategies as st

from ptheta.certified import truncation_order, tri
from ptheta.core import (
    decompose,
    functional_equation_residual,
    theta_certified,
)
from ptheta.oracle import theta_ref
from ptheta.tripleprod import theta_via_triple_product

qs = st.one_of(
    st.floats(min_value=-0.95, max_value=-0.02),
    st.floats(min_value=0.02, max_value=0.95),
)
xs_real = st.floats(min_value=-20.0, max_value=20.0)
xs_cplx = st.builds(complex,
                    st.floats(min_value=-15.0, max_value=15.0),
                    st.floats(min_value=-15.0, max_value=15.0))


@settings(max_examples=150, deadline=None)
@given(q=qs, x=xs_real)
def test_functional_equation_residual_within_err(q, x):
    r = functional_equation_residual(q, x, 1e-12)
    assert abs(complex(r.value)) <= r.err


@settings(max_examples=60, deadline=None)
@given(q=qs, x=xs_cplx)
def test_functional_equation_complex(q, x):
    r = functional_equation_residual(q, x, 1e-12)
    assert abs(complex(r.value)) <= r.err


@settings(max_examples=60, deadline=None)
@given(q=st.floats(min_value=0.05, max_value=0.95),
       x=st.floats(min_value=0.1, max_value=20.0),
       sign=st.sampled_from([-1.0, 1.0]))
def test_split_agrees_with_direct(q, x, sign):
    x *= sign
    parts = theta_via_triple_product(q, x, 1e-14)
    direct = theta_certified(q, x, 1e-13)
    diff = abs(complex(parts.difference.value) - complex(direct.value))
    assert diff <= parts.difference.err + direct.err


@settings(max_examples=60, deadline=None)
@given(q=qs, x=xs_real)
def test_decompose_agrees_with_direct(q, x):
    d = decompose(q, x, 1e-12)
    direct = theta_certified(q, x, 1e-12)
    diff = abs(complex(d.recombined.value) - complex(direct.value))
    assert diff <= d.recombined.err + direct.err


@settings(max_examples=60, deadline=None)
@given(q=st.floats(min_value=0.02, max_value=0.9),
       x=st.floats(min_value=0.0, max_value=50.0),
       tol=st.floats(min_value=1e-14, max_value=1e-4))
def test_truncation_order_postconditions(q, x, tol):
    n, tail = truncation_order(q, x, tol)
    assert tail <= tol * 1.001
    assert q ** (n + 1) * x <= 0.5
    # the bound really does dominate the true remainder (log space: the
    # terms span many hundreds of decades)
    brute = 0.0
    for j in range(n + 1, n + 200):
        lt = tri(j) * math.log(q) + (j * math.log(x) if x > 0 else -math.inf)
        if lt < -745.0:
            break
        brute += math.exp(lt)
    assert brute <= tail or brute == 0.0


@settings(max_examples=40, deadline=None)
@given(q=qs, x=st.floats(min_value=-8.0, max_value=8.0))
def test_certified_interval_contains_reference(q, x):
    cv = theta_certified(q, x, 1e-12)
    import mpmath as mp

    ref = theta_ref(q, x)
    assert abs(mp.mpf(cv.real) - ref) <= cv.err


@settings(max_examples=200, deadline=None)
@given(j=st.integers(min_value=0, max_value=100000))
def test_exponent_exactness(j):
    assert 2 * tri(j) == j * (j + 1)
    assert tri(j + 1) - tri(j) == j + 1
