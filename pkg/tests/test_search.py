"""Brute-force oracle: column enumeration, compatibility, clique search."""

import numpy as np
import pytest
from math import comb

from starbip.search import (
    BudgetExceeded,
    CliqueResult,
    brute_force_max_order,
    build_compatibility_graph,
    column_count_upper_bound,
    enumerate_columns,
    max_clique,
    witness_matrix,
)
from starbip.star import BipartiteTemplate, verify_template


class TestEnumeration:
    def test_counts(self):
        cols = enumerate_columns(4, 2)
        assert cols.columns.shape == (comb(4, 2) * 2, 4)
        full = enumerate_columns(4, 2, reduce_signs=False)
        assert full.columns.shape == (comb(4, 2) * 4, 4)

    def test_all_good_and_canonical(self):
        cols = enumerate_columns(5, 3)
        for col in cols.columns:
            assert int(col @ col) == 3
            nz = col[np.flatnonzero(col)]
            assert nz[0] == 1  # first nonzero entry normalized to +1

    def test_deterministic_lex(self):
        a = enumerate_columns(4, 2).columns
        b = enumerate_columns(4, 2).columns
        assert np.array_equal(a, b)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            enumerate_columns(12, 6, budget=10)

    def test_existence_guard(self):
        with pytest.raises(ValueError):
            enumerate_columns(2, 3)


class TestCompatibility:
    def test_edges_are_orthogonal_pairs(self):
        cols = enumerate_columns(4, 2)
        g = build_compatibility_graph(cols)
        m = cols.columns.astype(int)
        for i in range(len(m)):
            for j in range(len(m)):
                bit = (g.neighbors[i] >> j) & 1
                expect = 1 if (i != j and m[i] @ m[j] == 0) else 0
                assert bit == expect


class TestMaxClique:
    def test_empty(self):
        g = build_compatibility_graph(enumerate_columns(1, 1))
        assert max_clique(g).size == 1

    def test_identity_cell(self):
        # mu^2 = 1: disjoint unit columns, clique = s
        g = build_compatibility_graph(enumerate_columns(5, 1))
        assert max_clique(g).size == 5

    def test_hadamard_cell(self):
        g = build_compatibility_graph(enumerate_columns(4, 4))
        res = max_clique(g)
        assert res.size == 4
        assert len(res.witness) == 4

    def test_conference_cell(self):
        g = build_compatibility_graph(enumerate_columns(6, 5))
        assert max_clique(g, stop_at=column_count_upper_bound(6, 5)).size == 6

    def test_two_mod_four_cell(self):
        g = build_compatibility_graph(enumerate_columns(6, 6))
        assert max_clique(g, stop_at=column_count_upper_bound(6, 6)).size == 2

    def test_timeout_flags_inexact(self):
        g = build_compatibility_graph(enumerate_columns(8, 4))
        res = max_clique(g, time_budget_ms=0)
        assert not res.exact


class TestUpperBound:
    def test_values(self):
        assert column_count_upper_bound(4, 4) == 4
        assert column_count_upper_bound(5, 3) == 4  # odd s, non-square mu^2
        assert column_count_upper_bound(9, 4) == 9  # odd s, square mu^2
        assert column_count_upper_bound(6, 3) == 5  # 2 mod 4, 3 not a 2-square sum
        assert column_count_upper_bound(6, 5) == 6  # 5 = 1 + 4
        assert column_count_upper_bound(10, 7) == 9


class TestOracle:
    @pytest.mark.parametrize(
        "s,mu_sq,expected",
        [(1, 1, 2), (4, 4, 8), (6, 6, 8), (6, 5, 12), (3, 3, 4), (5, 2, 9), (7, 3, 12)],
    )
    def test_small_cells(self, s, mu_sq, expected):
        res = brute_force_max_order(s, mu_sq)
        assert res.exact
        assert res.size == expected

    def test_symmetry_modes_agree(self):
        # full search and symmetry-reduced search must match on every
        # small cell, including with sign reduction disabled
        for s in range(1, 6):
            for mu_sq in range(1, s + 1):
                sym = brute_force_max_order(s, mu_sq, use_row_symmetry=True)
                raw = brute_force_max_order(s, mu_sq, use_row_symmetry=False)
                assert sym.size == raw.size, (s, mu_sq)
                full = max_clique(
                    build_compatibility_graph(
                        enumerate_columns(s, mu_sq, reduce_signs=False)
                    )
                )
                assert full.size + s == sym.size, (s, mu_sq)

    def test_witness_assembles(self):
        for s, mu_sq in [(4, 3), (5, 4), (6, 5)]:
            res = brute_force_max_order(s, mu_sq)
            b = witness_matrix(s, mu_sq, res.witness)
            t = BipartiteTemplate(B=b, mu_sq=mu_sq)
            assert verify_template(t)
            assert s + t.k == res.size
