"""Separating lines and the modulus-monotonicity probes behind them."""

import pytest

from ptheta.errors import DomainError
from ptheta.separation import (
    left_separating_line_B,
    monotonicity_in_b_probe,
    right_separating_line_B,
    separating_line,
    separating_line_A,
)

B_GRID = [0.0, 0.5, 1.0, 2.0, 4.0, 7.0, 10.0]


class TestCaseALines:
    @pytest.mark.parametrize("q", [0.35, 0.4, 0.5, 0.6, 0.7])
    def test_bound_and_margin(self, q):
        res = separating_line_A(q)
        assert res.a >= 5.0
        assert res.margin > 0
        assert not res.degenerate
        line = -res.a
        assert all(r.x.real < line for r in res.left)
        assert all(p.x.real > line for p in res.right)

    def test_degenerate_below_first_collision(self):
        res = separating_line_A(0.2)
        assert res.degenerate and res.a == 5.0 and res.margin > 0
        assert res.right == ()

    def test_single_pair_band(self):
        res = separating_line_A(0.4)
        assert len(res.right) == 1

    def test_rejects_negative_q(self):
        with pytest.raises(DomainError):
            separating_line_A(-0.5)


class TestCaseBLines:
    @pytest.mark.parametrize("q", [-0.75, -0.8, -0.9])
    def test_left_bound(self, q):
        res = left_separating_line_B(q)
        assert res.a >= 2.4 and res.margin > 0
        line = -res.a
        assert all(r.x.real < line for r in res.left)
        assert all(r.x.real > line for r in res.right)

    def test_left_degenerate(self):
        res = left_separating_line_B(-0.5)
        assert res.degenerate and res.a == 2.4 and res.margin > 0

    @pytest.mark.parametrize("q", [-0.8, -0.85, -0.9, -0.96])
    def test_right_bound(self, q):
        res = right_separating_line_B(q)
        assert res.a >= 3.2 and res.margin > 0
        assert all(r.x.real < res.a for r in res.left)
        assert all(r.x.real > res.a for r in res.right)

    def test_right_keeps_smallest_positive_left(self):
        res = right_separating_line_B(-0.8)
        poss_left = [r for r in res.left if r.kind == "real" and r.x.real > 0]
        assert len(poss_left) == 1
        assert poss_left[0].x.real < 1.5  # the near-1 zero

    def test_right_pair_left_of_line_deep(self):
        res = right_separating_line_B(-0.96)
        pair_res = [r for r in res.left if r.kind == "complex_pair"
                    and abs(r.x - complex(0.8246197382, 1.226652727)) < 1e-5]
        assert pair_res, "the known positive-part pair must sit left of the line"

    def test_right_degenerate(self):
        res = right_separating_line_B(-0.5)
        assert res.degenerate and res.a == 3.2

    def test_dispatch(self):
        assert separating_line(0.5, "separating").kind == "separating"
        with pytest.raises(DomainError):
            separating_line(0.5, "sideways")


class TestProbes:
    def test_case_a(self):
        rep = monotonicity_in_b_probe(0.5, 6.0, B_GRID, "separating")
        assert rep.product_increasing and rep.majorant_decreasing
        assert rep.endpoint_matches_g
        assert rep.violation is None

    def test_case_a_at_bound(self):
        rep = monotonicity_in_b_probe(0.35, 5.0, B_GRID, "separating")
        assert rep.product_increasing and rep.majorant_decreasing

    def test_case_b_left(self):
        rep = monotonicity_in_b_probe(-0.6, 2.4, B_GRID, "left")
        assert rep.product_increasing and rep.majorant_decreasing
        assert rep.endpoint_matches_g

    def test_case_b_right(self):
        rep = monotonicity_in_b_probe(-0.8, 3.5, B_GRID, "right")
        assert rep.product_increasing and rep.majorant_decreasing
        assert rep.endpoint_matches_g

    def test_grid_panel_20x20(self):
        # 20x20 (q, a) panel per kind, three b nodes each
        def panel(q_lo, q_hi, a_lo, a_hi, kind):
            for i in range(20):
                q = q_lo + (q_hi - q_lo) * i / 19
                for j in range(20):
                    a = a_lo + (a_hi - a_lo) * j / 19
                    rep = monotonicity_in_b_probe(q, a, [0.0, 1.0, 5.0], kind)
                    assert rep.product_increasing and rep.majorant_decreasing, (
                        kind, q, a, rep.violation)

        panel(0.3, 0.94, 5.0, 15.0, "separating")
        panel(-0.94, -0.05, 2.4, 10.0, "left")
        panel(-0.94, -0.75, 3.2, 10.0, "right")

    def test_bad_grid(self):
        with pytest.raises(DomainError):
            monotonicity_in_b_probe(0.5, 6.0, [1.0, 2.0], "separating")
