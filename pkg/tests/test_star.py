"""Signed graphs, bipartite templates, verification, spectrum, edge format."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from starbip.constructions import conference_of_order, hadamard_of_order
from starbip.star import (
    INCOMPATIBLE,
    NON_ADJACENT,
    BipartiteTemplate,
    SignedGraph,
    assemble_graph,
    compatible_check,
    disjoint_union,
    existence_check,
    good_vertex_check,
    graph_from_edges,
    read_edge_list,
    spectrum_check,
    template_violations,
    verify_template,
    write_edge_list,
)


class TestSignedGraph:
    def test_validation(self):
        with pytest.raises(ValueError):
            SignedGraph(np.array([[0, 1], [0, 0]]))  # not symmetric
        with pytest.raises(ValueError):
            SignedGraph(np.array([[1, 0], [0, 0]]))  # diagonal
        with pytest.raises(ValueError):
            SignedGraph(np.array([[0, 2], [2, 0]]))  # entry range
        with pytest.raises(ValueError):
            SignedGraph(np.zeros((2, 3)))

    def test_edges_and_union(self):
        g = graph_from_edges(3, [(0, 1, 1), (1, 2, -1)])
        assert g.edges() == [(0, 1, 1), (1, 2, -1)]
        u = disjoint_union(g, g)
        assert u.n == 6
        assert len(u.edges()) == 4

    def test_loop_rejected(self):
        with pytest.raises(ValueError):
            graph_from_edges(2, [(0, 0, 1)])

    def test_hash_eq(self):
        g1 = graph_from_edges(2, [(0, 1, 1)])
        g2 = graph_from_edges(2, [(0, 1, 1)])
        assert g1 == g2 and hash(g1) == hash(g2)


class TestExistence:
    def test_basic(self):
        assert existence_check(4, 4)
        assert existence_check(5, 3)
        assert not existence_check(2, 3)  # s below mu^2
        assert not existence_check(4, 0)
        # non-integer mu^2 admits no sign-vector solution
        assert not existence_check(4, "5/2")

    def test_bad_s(self):
        with pytest.raises(ValueError):
            existence_check(0, 1)


class TestColumnChecks:
    def test_good_vertex(self):
        assert good_vertex_check([1, 1, 0], 2)
        assert not good_vertex_check([1, 1, 0], 3)
        with pytest.raises(ValueError):
            good_vertex_check([2, 0], 4)

    def test_compatible(self):
        assert compatible_check([1, 1, 0], [1, -1, 0], 2) == NON_ADJACENT
        assert compatible_check([1, 1, 0], [0, 1, 1], 2) == INCOMPATIBLE
        with pytest.raises(ValueError):
            compatible_check([1, 0, 0], [1, 1, 0], 2)


class TestTemplates:
    def test_hadamard_template(self):
        h = hadamard_of_order(4)
        t = BipartiteTemplate(B=h, mu_sq=4)
        assert verify_template(t)
        assert template_violations(t) == []
        claim = spectrum_check(t)
        assert (claim.mult_mu, claim.mult_zero, claim.mult_neg_mu) == (4, 0, 4)

    def test_conference_template(self):
        c = conference_of_order(6)
        t = BipartiteTemplate(B=c, mu_sq=5)
        assert verify_template(t)
        assert spectrum_check(t).n == 12

    def test_padded_zero_rows(self):
        b = np.vstack([hadamard_of_order(2), np.zeros((2, 2), dtype=np.int64)])
        t = BipartiteTemplate(B=b, mu_sq=2)
        assert verify_template(t)
        claim = spectrum_check(t)
        assert (claim.mult_mu, claim.mult_zero) == (2, 2)

    def test_violations(self):
        # duplicate column: norms fine, orthogonality broken
        b = np.array([[1, 1], [1, 1], [0, 0]])
        t = BipartiteTemplate(B=b, mu_sq=2)
        assert not verify_template(t)
        assert any("columns 0,1 not orthogonal" in p for p in template_violations(t))
        # wrong norm
        t2 = BipartiteTemplate(B=np.array([[1], [1], [1]]), mu_sq=2)
        assert any("norm 3" in p for p in template_violations(t2))
        # wide matrix
        t3 = BipartiteTemplate(B=np.array([[1, 0, 0]]), mu_sq=1)
        assert any("more columns" in p for p in template_violations(t3))

    def test_assemble(self):
        h = hadamard_of_order(2)
        g = assemble_graph(BipartiteTemplate(B=h, mu_sq=2))
        assert g.n == 4
        assert np.array_equal(g.adj[:2, 2:], h.T)
        assert np.array_equal(g.adj[2:, :2], h)
        with pytest.raises(ValueError, match="fails verification"):
            assemble_graph(BipartiteTemplate(B=np.array([[1], [1]]), mu_sq=1))

    def test_squared_adjacency_is_diagonal(self):
        # the defining identity behind the spectrum claim
        for b, mu_sq in [(hadamard_of_order(4), 4), (conference_of_order(4), 3)]:
            g = assemble_graph(BipartiteTemplate(B=b, mu_sq=mu_sq))
            a2 = g.adj @ g.adj
            k = b.shape[1]
            assert np.array_equal(a2[g.n - k :, g.n - k :], mu_sq * np.eye(k, dtype=np.int64))


def random_graphs(max_n=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(
            st.sampled_from([-1, 0, 1]), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2
        ).map(lambda tri: _from_triangle(n, tri))
    )


def _from_triangle(n, tri):
    a = np.zeros((n, n), dtype=np.int64)
    it = iter(tri)
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = a[j, i] = next(it)
    return SignedGraph(a)


class TestEdgeListFormat:
    @given(random_graphs())
    @settings(max_examples=40, deadline=None)
    def test_roundtrip(self, g):
        assert read_edge_list(write_edge_list(g)) == g

    def test_errors(self):
        with pytest.raises(ValueError):
            read_edge_list("")
        with pytest.raises(ValueError, match="header"):
            read_edge_list("oops\n")
        with pytest.raises(ValueError, match="expected 1 edges"):
            read_edge_list("2 1\n")
        with pytest.raises(ValueError, match="line 2"):
            read_edge_list("2 1\n0 1 ?\n")
        with pytest.raises(ValueError, match="out of range"):
            read_edge_list("2 1\n0 5 +\n")
