"""Hadamard/conference constructors, order classification, sign format."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from starbip.constructions import (
    classify_order,
    conference_of_order,
    hadamard_of_order,
    is_conference,
    is_hadamard,
    paley_conference,
    paley_hadamard_I,
    paley_hadamard_II,
    read_sign_matrix,
    sylvester,
    write_sign_matrix,
)


class TestPredicates:
    def test_is_hadamard(self):
        assert is_hadamard(np.array([[1]]))
        assert is_hadamard(np.array([[1, 1], [1, -1]]))
        assert not is_hadamard(np.array([[1, 1], [1, 1]]))
        assert not is_hadamard(np.array([[1, 0], [0, 1]]))  # zero entries
        assert not is_hadamard(np.ones((2, 3)))

    def test_is_conference(self):
        assert is_conference(np.array([[0, 1], [1, 0]]))
        assert not is_conference(np.array([[1, 1], [1, -1]]))  # nonzero diagonal
        assert not is_conference(np.zeros((3, 3)))


class TestSylvester:
    @pytest.mark.parametrize("t", range(6))
    def test_orders(self, t):
        h = sylvester(t)
        assert h.shape == (2**t, 2**t)
        assert is_hadamard(h)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            sylvester(-1)
        with pytest.raises(ValueError):
            sylvester(11)


class TestPaley:
    @pytest.mark.parametrize("q", [1, 3, 5, 7, 9, 11, 13, 17, 25, 27])
    def test_conference(self, q):
        c = paley_conference(q)
        assert c.shape == (q + 1, q + 1)
        assert is_conference(c)

    def test_conference_symmetry_classes(self):
        # symmetric for q = 1 mod 4, skew for q = 3 mod 4
        assert np.array_equal(paley_conference(5), paley_conference(5).T)
        c = paley_conference(7)
        assert np.array_equal(c.T, -c + 2 * np.diag(np.diagonal(c)))

    @pytest.mark.parametrize("q", [3, 7, 11, 19, 23, 27])
    def test_hadamard_I(self, q):
        assert is_hadamard(paley_hadamard_I(q))

    @pytest.mark.parametrize("q", [5, 9, 13, 25])
    def test_hadamard_II(self, q):
        h = paley_hadamard_II(q)
        assert h.shape == (2 * (q + 1), 2 * (q + 1))
        assert is_hadamard(h)

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            paley_conference(4)
        with pytest.raises(ValueError):
            paley_hadamard_I(5)
        with pytest.raises(ValueError):
            paley_hadamard_II(7)


class TestReachability:
    @pytest.mark.parametrize("n", [1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 48, 64])
    def test_reachable(self, n):
        h = hadamard_of_order(n)
        assert h is not None and is_hadamard(h) and h.shape == (n, n)

    @pytest.mark.parametrize("n", [3, 5, 6, 7, 9, 10, 11, 13, 14, 15])
    def test_not_reachable(self, n):
        assert hadamard_of_order(n) is None

    @pytest.mark.parametrize("q", [1, 3, 5, 9, 13, 17])
    def test_conference_orders(self, q):
        c = conference_of_order(q + 1)
        assert c is not None and is_conference(c)

    def test_conference_unreachable(self):
        assert conference_of_order(9) is None  # 8 is not an odd prime power
        assert conference_of_order(1) is None

    def test_classify(self):
        c12 = classify_order(12)
        assert c12.in_NH and not c12.in_NC and not c12.odd
        c9 = classify_order(9)
        assert c9.in_NC and not c9.in_NH and c9.odd
        c6 = classify_order(6)
        assert c6.two_mod_four and not c6.in_NH
        assert classify_order(1).in_NC


sign_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.sampled_from([-1, 0, 1]), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
).map(lambda rows: np.array(rows, dtype=np.int64))


class TestSignFormat:
    @given(sign_matrices)
    @settings(max_examples=30, deadline=None)
    def test_roundtrip(self, m):
        assert np.array_equal(read_sign_matrix(write_sign_matrix(m)), m)

    def test_example(self):
        assert write_sign_matrix(np.array([[1, -1], [0, 1]])) == "+-\n0+\n"

    def test_errors(self):
        with pytest.raises(ValueError, match="line 1"):
            read_sign_matrix("+x\n")
        with pytest.raises(ValueError, match="ragged"):
            read_sign_matrix("+-\n+\n")
        with pytest.raises(ValueError):
            read_sign_matrix("")
