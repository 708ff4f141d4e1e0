"""Closed-form maximum-order engine: plans, packings, verdicts."""

import numpy as np
import pytest

from starbip.maxorder import (
    BOUNDS,
    EXACT,
    build_extremal_template,
    enumerate_factorization_plans,
    formula_max_order,
    max_columns_upper_bound,
    packing_template,
)
from starbip.star import verify_template


class TestPlans:
    def test_plans_fit(self):
        for plan in enumerate_factorization_plans(8, 4):
            assert plan.p * plan.q == 4
            assert plan.rows <= 8

    def test_deterministic(self):
        a = enumerate_factorization_plans(9, 6)
        b = enumerate_factorization_plans(9, 6)
        assert a == b

    def test_existence_guard(self):
        with pytest.raises(ValueError):
            enumerate_factorization_plans(2, 3)

    def test_build_template(self):
        for s, mu_sq in [(8, 4), (6, 5), (9, 6)]:
            for plan in enumerate_factorization_plans(s, mu_sq):
                t = build_extremal_template(s, mu_sq, plan)
                assert verify_template(t)
                assert t.s == s and t.k == plan.cols


class TestPacking:
    def test_witness_verifies(self):
        for s in range(1, 13):
            for mu_sq in range(1, min(s, 8) + 1):
                t = packing_template(s, mu_sq)
                assert verify_template(t)

    def test_mixed_blocks_beat_single(self):
        # s=7, mu^2=3: a 4x4 conference block plus a 3x1 all-ones block
        # fits 5 columns where any single block type fits at most 4
        t = packing_template(7, 3)
        assert t.k == 5


class TestUpperBound:
    def test_agrees_with_oracle_module(self):
        from starbip.search import column_count_upper_bound

        for s in range(1, 13):
            for mu_sq in range(1, s + 1):
                assert max_columns_upper_bound(s, mu_sq) == column_count_upper_bound(s, mu_sq)


class TestFormula:
    @pytest.mark.parametrize(
        "s,mu_sq,expected",
        [
            (1, 1, 2), (5, 1, 10),               # identity block
            (4, 4, 8), (8, 8, 16),               # Hadamard square
            (3, 3, 4), (5, 5, 6), (7, 7, 8),     # odd square block
            (6, 6, 8), (10, 10, 12),             # 2 mod 4 square block
            (6, 5, 12), (10, 9, 20),             # conference block
            (9, 8, 17), (5, 4, 9),               # Hadamard plus isolated row
            (7, 6, 9),                            # 2 mod 4, one-zero columns
        ],
    )
    def test_exact_cells(self, s, mu_sq, expected):
        res = formula_max_order(s, mu_sq)
        assert res.verdict == EXACT
        assert res.exact_value == expected
        assert res.lo == res.hi == expected

    def test_witness_always_valid(self):
        for s in range(1, 13):
            for mu_sq in range(1, min(s, 8) + 1):
                res = formula_max_order(s, mu_sq)
                assert verify_template(res.witness)
                assert s + res.witness.k == res.lo
                assert res.lo <= res.hi <= 2 * s

    def test_bounds_cells_are_honest(self):
        res = formula_max_order(6, 3)
        assert res.verdict == BOUNDS
        assert res.lo == 10 and res.hi == 11
        assert res.exact_value is None

    def test_packing_meets_bound(self):
        # s=8, mu^2=4: two Hadamard blocks fill all 8 rows
        res = formula_max_order(8, 4)
        assert res.verdict == EXACT and res.lo == 16
        assert "meets counting bound" in res.provenance or "Hadamard" in res.provenance

    def test_existence_error(self):
        with pytest.raises(ValueError, match="no graphs exist"):
            formula_max_order(2, 3)
