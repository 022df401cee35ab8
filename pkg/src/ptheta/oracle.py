"""High-precision reference evaluations (mpmath).

These are the independent oracle for tests and derived constants: plain
direct summation at >= 50 significant digits, with working precision raised
adaptively so that cancellation never eats into the requested digits.  The
certified double-double engines never call into this module.
"""

from __future__ import annotations

import math

import mpmath as mp

from .certified import deriv_coeff, tri


def _headroom(q, x, extra_digits: int) -> int:
    """Decimal digits of cancellation headroom for the direct sum."""
    qa, xa = abs(q), abs(x)
    if qa == 0.0 or xa <= 1.0:
        return extra_digits + 15
    lq, lx = math.log10(qa), math.log10(xa)
    j_star = max(1, round(lx / -lq))
    peak = max(tri(j) * lq + j * lx for j in (j_star - 1, j_star, j_star + 1))
    return extra_digits + 15 + max(0, math.ceil(peak))


def theta_ref(q, x, dps: int = 50):
    """Reference value of the series at (q, x); mpf or mpc."""
    with mp.workdps(_headroom(q, x, dps)):
        qm = mp.mpf(q)
        xm = mp.mpmathify(x)
        s = mp.mpf(1)
        t = mp.mpmathify(1)
        qp = mp.mpf(1)
        floor = mp.mpf(10) ** (-(mp.mp.dps - 5))
        for j in range(1, 200_000):
            qp *= qm
            t *= qp * xm
            s += t
            if abs(t) < floor * (1 + abs(s)) and abs(qp * xm) < 0.5:
                break
        return +s


def theta_deriv_ref(q, x, m: int = 0, nq: int = 0, dps: int = 50):
    """Reference term-wise derivative (d/dx)^m (d/dq)^nq."""
    with mp.workdps(_headroom(q, x, dps) + 10):
        qm = mp.mpf(q)
        xm = mp.mpmathify(x)
        s = mp.mpmathify(0)
        floor = mp.mpf(10) ** (-(mp.mp.dps - 5))
        for j in range(m, 200_000):
            c = deriv_coeff(j, m, nq)
            if c:
                t = c * qm ** (tri(j) - nq) * xm ** (j - m)
                s += t
                if j > m + 4 and abs(t) < floor * (1 + abs(s)) and abs(qm**j * xm) < 0.5:
                    break
        return +s


def theta_star_ref(q, x, dps: int = 50):
    """Reference two-sided sum sum_{j in Z} q^{j(j+1)/2} x^j."""
    with mp.workdps(_headroom(q, x, dps) + 10):
        qm = mp.mpf(q)
        xm = mp.mpmathify(x)
        s = mp.mpmathify(0)
        floor = mp.mpf(10) ** (-(mp.mp.dps - 5))
        for direction in (1, -1):
            j = 0 if direction == 1 else -1
            while True:
                t = qm ** tri(j) * xm**j
                s += t
                j += direction
                if abs(t) < floor and abs(j) > 4:
                    break
                if abs(j) > 100_000:
                    raise RuntimeError("two-sided reference sum did not converge")
        return +s


def g_ref(q, x, dps: int = 50):
    """Reference negative-index tail sum_{m>=1} q^{m(m-1)/2} x^{-m}."""
    with mp.workdps(dps + 25):
        qm = mp.mpf(q)
        xm = mp.mpmathify(x)
        s = mp.mpmathify(0)
        floor = mp.mpf(10) ** (-(mp.mp.dps - 5))
        for m in range(1, 100_000):
            t = qm ** (m * (m - 1) // 2) * xm ** (-m)
            s += t
            if abs(t) < floor and m > 4:
                break
        return +s


def real_zero_ref(q, lo: float, hi: float, dps: int = 30):
    """Bisection zero of the series on [lo, hi]; requires a sign change."""
    with mp.workdps(dps + 15):
        a, b = mp.mpf(lo), mp.mpf(hi)
        fa, fb = theta_ref(q, a, dps), theta_ref(q, b, dps)
        if fa == 0:
            return +a
        if fb == 0:
            return +b
        if mp.sign(fa) == mp.sign(fb):
            raise ValueError(f"no sign change on [{lo}, {hi}] for q={q}")
        for _ in range(dps * 4):
            mid = (a + b) / 2
            fm = theta_ref(q, mid, dps)
            if fm == 0:
                return +mid
            if mp.sign(fm) == mp.sign(fa):
                a, fa = mid, fm
            else:
                b = mid
        return +((a + b) / 2)
