"""Vertical lines separating real zeros from complex conjugate pairs.

For q > 0 past the first spectral value, a line Re x = -a with all real
zeros to its left and all pairs to its right always exists with a >= 5
(real zeros stay left of -6).  For q < 0 the analogous left line (negative
zeros left; pairs and positive zeros right) exists with a >= 2.4, and a
right line Re x = +a (everything except the non-smallest positive zeros
left) with a >= 3.2.

Line placement uses the half-gap rule on the admissible interval of a,
floored at the guaranteed bound so the reported a never undershoots it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .certified import DEFAULT_TOL, require_q, truncation_order
from .errors import DomainError, SeparationValidationError
from .spectrum import spectral_point_A, spectral_point_B
from .tripleprod import g_tail, jacobi_theta_star
from .zeros import COMPLEX_Q_CAP, Disk, ZeroRecord, complex_zeros, real_zeros

PAIR_SEARCH_RADIUS = 30.0
REAL_SCAN = 200.0


def _pairs_in_disk(q: float, tol: float, radius: float | None = None):
    """Conjugate pairs within a desk-scale disk; beyond the automatic
    truncation cap the order is fixed explicitly by the same tail rule."""
    if radius is None:
        radius = PAIR_SEARCH_RADIUS if abs(q) <= COMPLEX_Q_CAP else 12.0
    if abs(q) <= COMPLEX_Q_CAP:
        records = complex_zeros(q, Disk(0.0, radius), tol)
    else:
        n, _ = truncation_order(abs(q), radius, tol / 10.0)
        records = complex_zeros(q, Disk(0.0, radius), tol, n_override=n)
    return [r for r in records if r.kind == "complex_pair"], radius


@dataclass(frozen=True)
class SeparationResult:
    """A separating line Re x = -a (or +a for the right kind) and its
    witnesses; margin is the smallest distance from any witness to the line."""

    q: float
    kind: str  # "separating" | "left" | "right"
    a: float
    margin: float
    left: tuple[ZeroRecord, ...]
    right: tuple[ZeroRecord, ...]
    degenerate: bool = False
    coverage_radius: float = PAIR_SEARCH_RADIUS
    notes: tuple[str, ...] = ()

    @property
    def line_re(self) -> float:
        return self.a if self.kind == "right" else -self.a


def _half_gap_above_floor(a_lo: float, a_hi: float, floor: float) -> float:
    """Midpoint of (max(a_lo, floor), a_hi); errors if empty."""
    lo = max(a_lo, floor)
    if not lo < a_hi:
        raise SeparationValidationError(
            f"no admissible line: interval ({a_lo}, {a_hi}) with floor {floor}"
        )
    return 0.5 * (lo + a_hi)


def _validate(result: SeparationResult) -> None:
    """Definition side check; every witness strictly on its assigned side."""
    line = result.line_re
    for r in result.left:
        if not r.x.real < line:
            raise SeparationValidationError(
                f"witness {r.x} assigned left is not left of Re = {line}"
            )
    for r in result.right:
        if not r.x.real > line:
            raise SeparationValidationError(
                f"witness {r.x} assigned right is not right of Re = {line}"
            )
    if not result.margin > 0:
        raise SeparationValidationError("margin must be positive")


def separating_line_A(q: float, tol: float = DEFAULT_TOL) -> SeparationResult:
    """Case q > 0: all real zeros left, all conjugate pairs right; a >= 5."""
    require_q(q)
    if q <= 0:
        raise DomainError("separating lines concern q > 0")
    q1 = spectral_point_A(1, tol).q_star
    reals = real_zeros(q, -REAL_SCAN, 0.0, tol=tol)
    if q <= q1:
        a = 5.0
        margin = min((-r.x.real - a for r in reals), default=math.inf)
        res = SeparationResult(
            q=q, kind="separating", a=a, margin=margin,
            left=tuple(reals), right=(), degenerate=True,
            notes=("no conjugate pairs below the first spectral value; "
                   "line fixed at the guaranteed bound",),
        )
        _validate(res)
        return res
    pairs, _ = _pairs_in_disk(q, tol, radius=49.8)
    if not reals:
        raise SeparationValidationError(f"no real zeros found at q={q}")
    a_hi = -max(r.x.real for r in reals)
    a_lo = max([0.0] + [-p.x.real for p in pairs])
    a = _half_gap_above_floor(a_lo, a_hi, 5.0)
    margin = min(
        min(-r.x.real - a for r in reals),
        min(p.x.real + a for p in pairs) if pairs else math.inf,
    )
    res = SeparationResult(
        q=q, kind="separating", a=a, margin=margin,
        left=tuple(reals), right=tuple(pairs), coverage_radius=49.8,
    )
    if a < 5.0:
        raise SeparationValidationError(f"a = {a} < 5 in the q > 0 case")
    _validate(res)
    return res


def left_separating_line_B(q: float, tol: float = DEFAULT_TOL) -> SeparationResult:
    """Case q < 0: negative zeros left; pairs and positive zeros right;
    a >= 2.4."""
    require_q(q)
    if q >= 0:
        raise DomainError("left separating lines concern q < 0")
    qbar1 = spectral_point_B(1, tol).q_star
    reals = real_zeros(q, -REAL_SCAN, REAL_SCAN, tol=tol)
    negs = [r for r in reals if r.x.real < 0]
    poss = [r for r in reals if r.x.real > 0]
    degenerate = q > qbar1
    if degenerate:
        pairs = []
        a = 2.4
        notes = ("no conjugate pairs above the first negative spectral value; "
                 "line fixed at the guaranteed bound",)
    else:
        pairs, coverage = _pairs_in_disk(q, tol)
        if not negs:
            raise SeparationValidationError(f"no negative zeros found at q={q}")
        a_hi = -max(r.x.real for r in negs)
        a_lo = max([0.0] + [-p.x.real for p in pairs])
        a = _half_gap_above_floor(a_lo, a_hi, 2.4)
        notes = ()
    right = tuple(pairs) + tuple(poss)
    margin_terms = [-r.x.real - a for r in negs]
    margin_terms += [p.x.real + a for p in pairs]
    margin_terms += [r.x.real + a for r in poss]
    margin = min(margin_terms, default=math.inf)
    res = SeparationResult(
        q=q, kind="left", a=a, margin=margin,
        left=tuple(negs), right=right, degenerate=degenerate, notes=notes,
        coverage_radius=coverage if not degenerate else PAIR_SEARCH_RADIUS,
    )
    if a < 2.4:
        raise SeparationValidationError(f"a = {a} < 2.4 for the left line")
    _validate(res)
    return res


def right_separating_line_B(q: float, tol: float = DEFAULT_TOL) -> SeparationResult:
    """Case q < 0: negative zeros, the smallest positive zero, and all pairs
    left; remaining positive zeros right; a >= 3.2.

    For q above the second negative spectral value the guaranteed bound does
    not apply; the result is returned degenerate with the conventional a and
    without the side check (the second positive zero may then sit below 3.2).
    """
    require_q(q)
    if q >= 0:
        raise DomainError("right separating lines concern q < 0")
    qbar2 = spectral_point_B(2, tol).q_star
    reals = real_zeros(q, -REAL_SCAN, REAL_SCAN, tol=tol)
    negs = [r for r in reals if r.x.real < 0]
    poss = sorted((r for r in reals if r.x.real > 0), key=lambda r: r.x.real)
    if q > qbar2:
        return SeparationResult(
            q=q, kind="right", a=3.2, margin=0.0,
            left=tuple(negs) + tuple(poss[:1]), right=tuple(poss[1:]),
            degenerate=True,
            notes=("right line guaranteed only below the second negative "
                   "spectral value; conventional bound reported, side check "
                   "skipped",),
        )
    pairs, coverage = _pairs_in_disk(q, tol)
    if len(poss) < 2:
        raise SeparationValidationError(
            f"need at least two positive zeros in the scan window at q={q}"
        )
    x1 = poss[0].x.real
    a_hi = poss[1].x.real
    a_lo = max([x1] + [p.x.real for p in pairs])
    a = _half_gap_above_floor(a_lo, a_hi, 3.2)
    left = tuple(negs) + (poss[0],) + tuple(pairs)
    right = tuple(poss[1:])
    margin_terms = [a - x1] + [a - p.x.real for p in pairs]
    margin_terms += [r.x.real - a for r in poss[1:]]
    margin_terms += [a - r.x.real for r in negs]
    margin = min(margin_terms, default=math.inf)
    res = SeparationResult(
        q=q, kind="right", a=a, margin=margin, left=left, right=right,
        coverage_radius=coverage,
    )
    if a < 3.2:
        raise SeparationValidationError(f"a = {a} < 3.2 for the right line")
    _validate(res)
    return res


def separating_line(q: float, kind: str, tol: float = DEFAULT_TOL) -> SeparationResult:
    if kind == "separating":
        return separating_line_A(q, tol)
    if kind == "left":
        return left_separating_line_B(q, tol)
    if kind == "right":
        return right_separating_line_B(q, tol)
    raise DomainError(f"kind must be separating|left|right, got {kind!r}")


# ---------------------------------------------------------------------------
# Monotonicity probes along the line: |Theta*| grows with |Im x| while the
# term-paired tail majorants shrink, which is what makes the lines work.


@dataclass(frozen=True)
class ProbeReport:
    kind: str
    q: float
    a: float
    b_grid: tuple[float, ...]
    product_values: tuple[float, ...]
    majorant_values: tuple[float, ...]
    product_increasing: bool
    majorant_decreasing: bool
    endpoint_matches_g: bool
    violation: tuple[float, float] | None = None


def _pair_majorant_case_a(q: float, a: float, b: float) -> float:
    """Sum of |q^{(2k-1)(k-1)} x^{-2k} (x + q^{2k-1})| over k >= 1."""
    x = complex(-a, b)
    ax2 = abs(x) ** 2
    s = 0.0
    qp = 1.0  # q^{(2k-1)(k-1)}
    k = 1
    while True:
        t = qp * abs(x + q ** (2 * k - 1)) / ax2**k
        s += t
        if t < 1e-30 * s or k > 10_000:
            return s
        qp *= q ** (4 * k - 1)  # (2k+1)k - (2k-1)(k-1)
        k += 1


def _u_head_case_b(tau: float, x: complex) -> complex:
    """First eight tail terms at parameter -tau."""
    return (
        1 / x
        - tau / x**2
        - tau**3 / x**3
        + tau**6 / x**4
        + tau**10 / x**5
        - tau**15 / x**6
        - tau**21 / x**7
        + tau**28 / x**8
    )


def _e_block_case_b(tau: float, x: complex, k: int) -> complex:
    """Four consecutive tail terms m = 4k+1..4k+4 at parameter -tau."""
    t = tau ** (2 * k * (4 * k + 1))
    return t * (x**3 - tau ** (4 * k + 1) * x**2 - tau ** (8 * k + 3) * x
                + tau ** (12 * k + 6)) / x ** (4 * k + 4)


def _left_majorant_case_b(tau: float, a: float, b: float) -> float:
    x = complex(-a, b)
    s = abs(_u_head_case_b(tau, x))
    k = 2
    while True:
        t = abs(_e_block_case_b(tau, x, k))
        s += t
        if t < 1e-30 * s or k > 10_000:
            return s
        k += 1


def _g_quad_case_b(tau: float, x: complex, j: int) -> complex:
    """Four consecutive terms of tail/x^2, m = 4j-3..4j, at parameter -tau."""
    return (
        tau ** ((2 * j - 2) * (4 * j - 3)) / x ** (4 * j - 1)
        - tau ** ((2 * j - 1) * (4 * j - 3)) / x ** (4 * j)
        - tau ** ((2 * j - 1) * (4 * j - 1)) / x ** (4 * j + 1)
        + tau ** (2 * j * (4 * j - 1)) / x ** (4 * j + 2)
    )


def _right_majorant_case_b(tau: float, a: float, b: float) -> float:
    x = complex(a, b)
    s = 0.0
    j = 1
    while True:
        t = abs(_g_quad_case_b(tau, x, j))
        s += t
        if (t < 1e-30 * s and j > 2) or j > 10_000:
            return s
        j += 1


def monotonicity_in_b_probe(
    q: float, a: float, b_grid, kind: str, tol: float = DEFAULT_TOL
) -> ProbeReport:
    """Sample b and assert: the product modulus grows strictly (divided by
    |x|^2 for the right kind) while the paired tail majorant shrinks
    strictly; at b = 0 the majorant coincides with |G|."""
    require_q(q)
    bs = tuple(sorted(float(b) for b in b_grid))
    if len(bs) < 2 or bs[0] != 0.0:
        raise DomainError("b_grid must start at 0 and contain >= 2 points")
    tau = abs(q)
    prod_vals = []
    major_vals = []
    for b in bs:
        if kind == "separating":
            x = complex(-a, b)
            ts = jacobi_theta_star(q, x, 1e-14)
            prod_vals.append(abs(complex(ts.value)))
            major_vals.append(_pair_majorant_case_a(q, a, b))
        elif kind == "left":
            x = complex(-a, b)
            ts = jacobi_theta_star(q, x, 1e-14)
            prod_vals.append(abs(complex(ts.value)))
            major_vals.append(_left_majorant_case_b(tau, a, b))
        elif kind == "right":
            x = complex(a, b)
            ts = jacobi_theta_star(q, x, 1e-14)
            prod_vals.append(abs(complex(ts.value)) / abs(x) ** 2)
            major_vals.append(_right_majorant_case_b(tau, a, b))
        else:
            raise DomainError(f"kind must be separating|left|right, got {kind!r}")
    inc = all(u < v for u, v in zip(prod_vals, prod_vals[1:]))
    dec = all(u > v for u, v in zip(major_vals, major_vals[1:]))
    violation = None
    if not inc:
        i = next(i for i, (u, v) in enumerate(zip(prod_vals, prod_vals[1:])) if not u < v)
        violation = (bs[i], bs[i + 1])
    elif not dec:
        i = next(i for i, (u, v) in enumerate(zip(major_vals, major_vals[1:])) if not u > v)
        violation = (bs[i], bs[i + 1])
    x0 = complex(-a, 0.0) if kind != "right" else complex(a, 0.0)
    g0 = abs(complex(g_tail(q, x0, 1e-14).value))
    if kind == "right":
        g0 /= abs(x0) ** 2
    endpoint = math.isclose(major_vals[0], g0, rel_tol=1e-10, abs_tol=1e-13)
    return ProbeReport(
        kind=kind, q=q, a=a, b_grid=bs,
        product_values=tuple(prod_vals), majorant_values=tuple(major_vals),
        product_increasing=inc, majorant_decreasing=dec,
        endpoint_matches_g=endpoint, violation=violation,
    )
