"""Star-complement engine for totally disconnected complements.

A candidate graph is described by its s x k bipartite block B: one row per
complement vertex, one column per star-set vertex, entries in {-1, 0, +1}.
The eigenvalue mu enters only through mu^2, which must be a positive
integer; everything is verified over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import integer_rank


@dataclass(frozen=True)
class SignedGraph:
    """Signed simple graph: symmetric {-1,0,1} adjacency with zero diagonal."""

    adj: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.adj, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diagonal(a) != 0):
            raise ValueError("diagonal must be zero")
        if not np.all(np.isin(a, (-1, 0, 1))):
            raise ValueError("entries must be in {-1,0,1}")
        object.__setattr__(self, "adj", a)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def edges(self):
        """Sorted list of (u, v, sign) with u < v."""
        out = []
        for u in range(self.n):
            for v in range(u + 1, self.n):
                s = int(self.adj[u, v])
                if s:
                    out.append((u, v, s))
        return out

    def __eq__(self, other):
        return isinstance(other, SignedGraph) and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash(self.adj.tobytes())


def graph_from_edges(n: int, edges) -> SignedGraph:
    a = np.zeros((n, n), dtype=np.int64)
    for u, v, s in edges:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        a[u, v] = a[v, u] = s
    return SignedGraph(a)


def disjoint_union(*graphs: SignedGraph) -> SignedGraph:
    n = sum(g.n for g in graphs)
    a = np.zeros((n, n), dtype=np.int64)
    off = 0
    for g in graphs:
        a[off : off + g.n, off : off + g.n] = g.adj
        off += g.n
    return SignedGraph(a)


@dataclass(frozen=True)
class BipartiteTemplate:
    """The bipartite block B of a candidate graph, plus mu^2.

    Rows index the complement vertices 0..s-1, columns the star-set
    vertices.  Validity (B^T B = mu^2 I with sign entries) is checked by
    verify_template, not at construction, so invalid candidates can be
    represented and reported on.
    """

    B: np.ndarray
    mu_sq: int

    def __post_init__(self):
        object.__setattr__(self, "B", np.atleast_2d(np.asarray(self.B, dtype=np.int64)))

    @property
    def s(self) -> int:
        return self.B.shape[0]

    @property
    def k(self) -> int:
        return self.B.shape[1]

    @property
    def n(self) -> int:
        return self.s + self.k


@dataclass(frozen=True)
class SpectrumClaim:
    n: int
    s: int
    mu_sq: int
    mult_mu: int
    mult_zero: int
    mult_neg_mu: int


def existence_check(s: int, mu_sq_candidate) -> bool:
    """A graph exists iff mu^2 is a positive integer and s >= mu^2."""
    if s < 1:
        raise ValueError("s must be positive")
    m = Fraction(mu_sq_candidate)
    return m.denominator == 1 and m.numerator >= 1 and s >= m.numerator


def good_vertex_check(b, mu_sq: int) -> bool:
    """A column is good iff its entries are signs summing in squares to mu^2."""
    b = np.asarray(b, dtype=np.int64).ravel()
    if not np.all(np.isin(b, (-1, 0, 1))):
        raise ValueError("column entries must be in {-1,0,1}")
    return int(b @ b) == mu_sq


NON_ADJACENT = "non-adjacent"
INCOMPATIBLE = "incompatible"


def compatible_check(b_u, b_v, mu_sq: int) -> str:
    """Two good columns are usable together only when exactly orthogonal.

    Any nonzero inner product would force an edge inside the star set,
    which bipartiteness with an empty complement rules out.
    """
    b_u = np.asarray(b_u, dtype=np.int64).ravel()
    b_v = np.asarray(b_v, dtype=np.int64).ravel()
    if not (good_vertex_check(b_u, mu_sq) and good_vertex_check(b_v, mu_sq)):
        raise ValueError("columns must both be good for mu^2")
    return NON_ADJACENT if int(b_u @ b_v) == 0 else INCOMPATIBLE


def verify_template(t: BipartiteTemplate) -> bool:
    b = t.B
    if not np.all(np.isin(b, (-1, 0, 1))):
        return False
    if t.k > t.s:
        return False
    return np.array_equal(b.T @ b, t.mu_sq * np.eye(t.k, dtype=np.int64))


def template_violations(t: BipartiteTemplate) -> list[str]:
    """Human-readable reasons why a template fails verification."""
    problems = []
    b = t.B
    if not np.all(np.isin(b, (-1, 0, 1))):
        problems.append("entries outside {-1,0,1}")
        return problems
    gram = b.T @ b
    for j in range(t.k):
        if int(gram[j, j]) != t.mu_sq:
            problems.append(f"column {j} has norm {int(gram[j, j])}, want {t.mu_sq}")
    for i in range(t.k):
        for j in range(i + 1, t.k):
            if int(gram[i, j]) != 0:
                problems.append(f"columns {i},{j} not orthogonal (inner product {int(gram[i, j])})")
    if t.k > t.s:
        problems.append(f"more columns ({t.k}) than rows ({t.s})")
    return problems


def assemble_graph(t: BipartiteTemplate) -> SignedGraph:
    """Block adjacency [[0, B^T], [B, 0]] with complement vertices first."""
    if not verify_template(t):
        raise ValueError("template fails verification: " + "; ".join(template_violations(t)))
    n = t.n
    a = np.zeros((n, n), dtype=np.int64)
    a[: t.s, t.s :] = t.B
    a[t.s :, : t.s] = t.B.T
    return SignedGraph(a)


def spectrum_check(t: BipartiteTemplate) -> SpectrumClaim:
    """Exact spectrum multiplicities for +-mu and 0, no floating point.

    B^T B = mu^2 I gives A^2 = diag(B B^T, mu^2 I); with rank(B) = k the
    squared adjacency has rank 2k, so A has eigenvalues +-mu with
    multiplicity k each (A traceless and bipartite-symmetric) and 0 with
    multiplicity 2s - n.
    """
    if not verify_template(t):
        raise ValueError("template fails verification")
    k = t.k
    if integer_rank(t.B) != k:
        raise AssertionError("rank deficiency despite B^T B = mu^2 I")
    return SpectrumClaim(
        n=t.n,
        s=t.s,
        mu_sq=t.mu_sq,
        mult_mu=k,
        mult_zero=t.s - k,
        mult_neg_mu=k,
    )


# -- signed edge-list format ---------------------------------------------------
# Header "n m", then m lines "u v sigma" with sigma in {+,-}.


def write_edge_list(g: SignedGraph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines += [f"{u} {v} {'+' if s > 0 else '-'}" for u, v, s in edges]
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> SignedGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge list")
    try:
        n, m = map(int, lines[0].split())
    except ValueError as e:
        raise ValueError(f"bad edge-list header {lines[0]!r}") from e
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edges, got {len(lines) - 1}")
    edges = []
    for k, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 3 or parts[2] not in "+-":
            raise ValueError(f"line {k}: expected 'u v +|-', got {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"line {k}: vertex out of range")
        edges.append((u, v, 1 if parts[2] == "+" else -1))
    return graph_from_edges(n, edges)
