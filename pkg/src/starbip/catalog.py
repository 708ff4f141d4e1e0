"""Named extremal graphs, the signed bipartite Kronecker product, the
signed strong-regularity checker, and switching-isomorphism testing.

Switching machinery convention: a certificate (perm, signs) says that
conjugating the first adjacency by diag(signs) and then relabelling
vertex i to perm[i] yields the second adjacency exactly.
"""

from __future__ import annotations

import hashlib
from collections import Counter, deque
from dataclasses import dataclass

import numpy as np

from .constructions import conference_of_order, hadamard_of_order
from .star import BipartiteTemplate, SignedGraph, assemble_graph, disjoint_union, graph_from_edges

EXACT_SIZE_LIMIT = 16


# -- basic helpers -------------------------------------------------------------


def underlying(g: SignedGraph) -> np.ndarray:
    return np.abs(g.adj)


def switch(g: SignedGraph, signs) -> SignedGraph:
    d = np.asarray(signs, dtype=np.int64)
    if d.shape != (g.n,) or not np.all(np.abs(d) == 1):
        raise ValueError("signs must be a +-1 vector of length n")
    return SignedGraph(d[:, None] * g.adj * d[None, :])


def permute(g: SignedGraph, perm) -> SignedGraph:
    """Relabel vertex i to perm[i]."""
    p = list(perm)
    a = np.zeros_like(g.adj)
    for i in range(g.n):
        for j in range(g.n):
            a[p[i], p[j]] = g.adj[i, j]
    return SignedGraph(a)


def _components(adj_u: np.ndarray) -> list[list[int]]:
    n = adj_u.shape[0]
    seen = [False] * n
    comps = []
    for root in range(n):
        if seen[root]:
            continue
        comp = [root]
        seen[root] = True
        dq = deque([root])
        while dq:
            v = dq.popleft()
            for w in np.flatnonzero(adj_u[v]):
                if not seen[w]:
                    seen[w] = True
                    comp.append(int(w))
                    dq.append(int(w))
        comps.append(comp)
    return comps


def cycle_sign_multiset(g: SignedGraph, max_length: int | None = None) -> Counter:
    """Multiset of (length, sign) over all simple cycles.

    A switching-isomorphism invariant (switching preserves every cycle
    sign, relabelling preserves lengths), used as a fast reject filter.
    """
    n = g.n
    if max_length is None:
        max_length = n
    a = g.adj
    counts: Counter = Counter()

    def dfs(root: int, v: int, sign: int, visited: int, length: int):
        for w in range(root, n):
            e = int(a[v, w])
            if e == 0:
                continue
            if w == root and length >= 3:
                counts[(length, sign * e)] += 1
            elif not (visited >> w) & 1 and w > root and length < max_length:
                dfs(root, w, sign * e, visited | (1 << w), length + 1)

    for root in range(n):
        dfs(root, root, 1, 1 << root, 1)
    for key in counts:
        counts[key] //= 2  # each cycle traversed in both directions
    return counts


# -- switching isomorphism -----------------------------------------------------


@dataclass(frozen=True)
class SwitchingCertificate:
    perm: tuple
    signs: tuple

    def verify(self, g1: SignedGraph, g2: SignedGraph) -> bool:
        return permute(switch(g1, self.signs), self.perm) == g2


def _switching_equivalent_signs(a1: np.ndarray, a2: np.ndarray):
    """Signs d with d_i d_j a1[i,j] = a2[i,j], given equal underlying graphs."""
    n = a1.shape[0]
    d = [0] * n
    for comp in _components(np.abs(a1)):
        d[comp[0]] = 1
        dq = deque([comp[0]])
        while dq:
            v = dq.popleft()
            for w in np.flatnonzero(a1[v]):
                w = int(w)
                want = int(a2[v, w]) // int(a1[v, w])
                if d[w] == 0:
                    d[w] = d[v] * want
                    dq.append(w)
                elif d[v] * d[w] != want:
                    return None
    return tuple(x if x else 1 for x in d)


def switching_isomorphic(g1: SignedGraph, g2: SignedGraph):
    """A verified SwitchingCertificate, or None.

    Exact backtracking over underlying-graph isomorphisms (vertex degrees
    pruned), with the switching-equivalence system solved per candidate.
    Restricted to order <= 16.
    """
    if g1.n != g2.n:
        return None
    n = g1.n
    if n > EXACT_SIZE_LIMIT:
        raise ValueError(f"exact mode restricted to n <= {EXACT_SIZE_LIMIT}")
    u1, u2 = underlying(g1), underlying(g2)
    deg1 = u1.sum(axis=0)
    deg2 = u2.sum(axis=0)
    if sorted(deg1) != sorted(deg2):
        return None
    # fast reject; length capped so dense graphs stay cheap
    filter_len = min(n, 6)
    if cycle_sign_multiset(g1, filter_len) != cycle_sign_multiset(g2, filter_len):
        return None

    # map vertices of g1 in descending-degree order for early pruning
    order = sorted(range(n), key=lambda v: (-deg1[v], v))
    image = [-1] * n
    used = [False] * n

    def extend(pos: int):
        if pos == n:
            perm = tuple(image)
            permuted = permute(g1, perm)
            d_perm = _switching_equivalent_signs(permuted.adj, g2.adj)
            if d_perm is None:
                return None
            signs = tuple(d_perm[perm[i]] for i in range(n))
            cert = SwitchingCertificate(perm=perm, signs=signs)
            return cert if cert.verify(g1, g2) else None
        v = order[pos]
        for w in range(n):
            if used[w] or deg2[w] != deg1[v]:
                continue
            ok = True
            for prev in order[:pos]:
                if u1[v, prev] != u2[w, image[prev]]:
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used[w] = True
            found = extend(pos + 1)
            used[w] = False
            image[v] = -1
            if found is not None:
                return found
        return None

    return extend(0)


# -- switching canonical form --------------------------------------------------

_ENTRY_CODE = {0: 0, 1: 1, -1: 2}


def _component_canonical(a: np.ndarray, comp: list[int]) -> tuple:
    """Lexicographically minimal encoding of one connected component.

    Orders are restricted to connected expansions; the signature is fixed
    by switching every first-seen edge positive, which is the unique
    switching representative for that spanning tree.  Branch and bound on
    the row-prefix encoding.
    """
    k = len(comp)
    sub = a[np.ix_(comp, comp)]
    best: list | None = None

    def encode_row(order, d, v):
        row = []
        dv = None
        for u in order:
            e = int(sub[v, u])
            if e and dv is None:
                dv = d[u] * e  # makes the first-seen edge positive
        for u in order:
            e = int(sub[v, u])
            row.append(_ENTRY_CODE[d[u] * dv * e] if e else 0)
        return row, dv

    def rec(order, d, flat):
        nonlocal best
        if len(order) == k:
            if best is None or flat < best:
                best = flat
            return
        attached = set()
        for v in range(k):
            if v not in order and any(sub[v, u] for u in order):
                attached.add(v)
        for v in sorted(attached) if order else range(k):
            row, dv = (encode_row(order, d, v) if order else ([], 1))
            new_flat = flat + row
            if best is not None:
                prefix = best[: len(new_flat)]
                if new_flat > prefix:
                    continue
            d2 = dict(d)
            d2[v] = dv if dv is not None else 1
            rec(order + [v], d2, new_flat)

    rec([], {}, [])
    return (k, tuple(best))


def switching_canonical_form(g: SignedGraph) -> bytes:
    """Canonical bytes: equal exactly for switching-isomorphic graphs.

    Disconnected graphs canonicalize as the sorted concatenation of their
    component forms.  Exact mode only, n <= 16.
    """
    if g.n > EXACT_SIZE_LIMIT:
        raise ValueError(f"exact mode restricted to n <= {EXACT_SIZE_LIMIT}")
    comps = _components(underlying(g))
    forms = sorted(_component_canonical(g.adj, c) for c in comps)
    out = bytearray()
    for k, flat in forms:
        out.append(k)
        out.extend(flat)
        out.append(255)
    return bytes(out)


# -- signed strong regularity --------------------------------------------------


@dataclass(frozen=True)
class SrgParams:
    n: int
    r: int
    a: int
    b: int
    c: int


def srg_check(g: SignedGraph):
    """SrgParams if the graph is signed strongly regular, else None.

    Requires regularity, excludes homogeneous complete and totally
    disconnected graphs, demands constant signed 2-walk counts over the
    positive / negative / non-adjacent pair classes, and verifies the
    resulting quadratic identity on A^2 as a final gate.
    """
    au = underlying(g)
    n = g.n
    degs = au.sum(axis=0)
    if n == 0 or not np.all(degs == degs[0]):
        return None
    r = int(degs[0])
    if r == 0:
        return None  # totally disconnected
    off = ~np.eye(n, dtype=bool)
    if np.all(au[off] == 1) and len({int(x) for x in g.adj[off]}) == 1:
        return None  # homogeneous complete
    a2 = g.adj @ g.adj
    consts = {}
    for name, mask in (
        ("a", g.adj == 1),
        ("b", g.adj == -1),
        ("c", (au == 0) & off),
    ):
        vals = {int(x) for x in a2[mask]}
        if len(vals) > 1:
            return None
        consts[name] = vals.pop() if vals else 0
    a, b, c = consts["a"], consts["b"], consts["c"]
    pos = (g.adj == 1).astype(np.int64)
    neg = (g.adj == -1).astype(np.int64)
    comp = ((au == 0) & off).astype(np.int64)
    if not np.array_equal(a2, a * pos - b * neg + c * comp + r * np.eye(n, dtype=np.int64)):
        return None
    return SrgParams(n=n, r=r, a=a, b=b, c=c)


# -- signed bipartite Kronecker product ---------------------------------------


def bipartition(g: SignedGraph):
    """Deterministic 2-colouring (U, V) of a bipartite signed graph.

    Per component, the side containing its smallest vertex goes to U;
    isolated vertices go to U.  Raises on odd cycles.
    """
    au = underlying(g)
    side = [-1] * g.n
    for comp in _components(au):
        side[comp[0]] = 0
        dq = deque([comp[0]])
        while dq:
            v = dq.popleft()
            for w in np.flatnonzero(au[v]):
                w = int(w)
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    dq.append(w)
                elif side[w] == side[v]:
                    raise ValueError("graph is not bipartite")
    u = [v for v in range(g.n) if side[v] == 0]
    v_ = [v for v in range(g.n) if side[v] == 1]
    return u, v_


def signed_kronecker_bipartite(g1: SignedGraph, g2: SignedGraph) -> SignedGraph:
    """Bipartite product acting on the off-diagonal blocks.

    With blocks B1 (U1 x V1) and B2 (U2 x V2), the result is the bipartite
    signed graph with block B1 (x) B2 on (U1 x U2, V1 x V2).
    """
    u1, v1 = bipartition(g1)
    u2, v2 = bipartition(g2)
    b1 = g1.adj[np.ix_(u1, v1)]
    b2 = g2.adj[np.ix_(u2, v2)]
    b = np.kron(b1, b2)
    nu, nv = b.shape
    adj = np.zeros((nu + nv, nu + nv), dtype=np.int64)
    adj[:nu, nu:] = b
    adj[nu:, :nu] = b.T
    return SignedGraph(adj)


# -- named graphs --------------------------------------------------------------

# Negative-edge list of the 13-edge biregular graph used for the mu^2 = 5
# extremal example: pairs (left i, right j), 1-based, inside K_{6,6} minus
# the perfect matching {i-i}.  Checksummed so transcription errors surface
# loudly in tests rather than silently.
BR_EDGES = (
    (1, 2), (1, 5), (1, 6),
    (2, 1), (2, 4), (2, 6),
    (3, 4), (3, 5), (3, 6),
    (4, 1), (4, 5),
    (5, 2), (5, 4),
)
BR_CHECKSUM = "6d770842388291e1fae4a213f347e4a2f7a0388bbcb69b00b5697e18f44c96f4"


def _br_checksum() -> str:
    payload = ";".join(f"{i},{j}" for i, j in sorted(BR_EDGES))
    return hashlib.sha256(payload.encode()).hexdigest()


def _complete_bipartite_minus_matching(m: int, negatives) -> SignedGraph:
    """K_{m,m} minus the perfect matching, negatives given as 1-based pairs."""
    neg = set(negatives)
    edges = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i == j:
                continue
            sign = -1 if (i, j) in neg else 1
            edges.append((i - 1, m + j - 1, sign))
    return graph_from_edges(2 * m, edges)


def build_sk2(s: int) -> SignedGraph:
    if s < 1:
        raise ValueError("s must be positive")
    return graph_from_edges(2 * s, [(i, s + i, 1) for i in range(s)])


def build_star(s: int) -> SignedGraph:
    if s < 1:
        raise ValueError("s must be positive")
    return graph_from_edges(s + 1, [(i, s, 1) for i in range(s)])


def build_k22_neg_k2() -> SignedGraph:
    return graph_from_edges(4, [(0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, -1)])


def build_k13_plus_k1() -> SignedGraph:
    return disjoint_union(build_star(3), SignedGraph(np.zeros((1, 1), dtype=np.int64)))


def build_k2s_half_neg(s: int) -> SignedGraph:
    """(K_{2,s}, E(K_{1,s/2})): two hubs over s leaves, the second hub
    negative on the first half."""
    if s < 2 or s % 2:
        raise ValueError("s must be even and >= 2")
    edges = [(i, s, 1) for i in range(s)]
    edges += [(i, s + 1, -1 if i < s // 2 else 1) for i in range(s)]
    return graph_from_edges(s + 2, edges)


def build_k2mu2_plus_k1(mu_sq: int) -> SignedGraph:
    if mu_sq % 4 != 2:
        raise ValueError("mu^2 must be 2 mod 4")
    return disjoint_union(
        build_k2s_half_neg(mu_sq), SignedGraph(np.zeros((1, 1), dtype=np.int64))
    )


def build_k44_neg_c6() -> SignedGraph:
    """(K_{4,4}, E(C_6)): negatives form a 6-cycle a1 b1 a2 b2 a3 b3."""
    neg = {(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (1, 3)}
    edges = []
    for i in range(1, 5):
        for j in range(1, 5):
            edges.append((i - 1, 4 + j - 1, -1 if (i, j) in neg else 1))
    return graph_from_edges(8, edges)


def build_k44_minus_4k2_neg_p4_k2() -> SignedGraph:
    """(K_{4,4} minus 4K_2, E(P_4 union K_2)): negatives form the 4-vertex
    path b3 a1 b2 a4 plus the disjoint edge a2 b1."""
    neg = {(1, 3), (1, 2), (4, 2), (2, 1)}
    return _complete_bipartite_minus_matching(4, neg)


def build_br_signed() -> SignedGraph:
    """(K_{6,6} minus 6K_2, E(BR)) with the fixed 13-edge biregular graph."""
    if _br_checksum() != BR_CHECKSUM:
        raise AssertionError("BR edge data corrupted (checksum mismatch)")
    return _complete_bipartite_minus_matching(6, BR_EDGES)


def build_hadamard_srg(s: int) -> SignedGraph:
    """SRG^s(2s): the bipartite double of a reachable Hadamard matrix."""
    h = hadamard_of_order(s)
    if h is None:
        raise ValueError(f"no Hadamard matrix of order {s} reachable")
    return assemble_graph(BipartiteTemplate(B=h, mu_sq=s))


def build_conference_srg(mu_sq: int) -> SignedGraph:
    """SRG^s(2 mu^2 + 2): the bipartite double of a conference matrix."""
    c = conference_of_order(mu_sq + 1)
    if c is None:
        raise ValueError(f"no conference matrix of order {mu_sq + 1} reachable")
    return assemble_graph(BipartiteTemplate(B=c, mu_sq=mu_sq))


NAMED_FAMILIES = {
    "sK2": ("s: int >= 1", build_sk2),
    "star": ("s: int >= 1 (K_{1,s}, all positive)", build_star),
    "K22_negK2": ("no parameters", build_k22_neg_k2),
    "K13_plus_K1": ("no parameters", build_k13_plus_k1),
    "K2s_half_neg": ("s: even int >= 2", build_k2s_half_neg),
    "K2mu2_plus_K1": ("mu_sq: int = 2 mod 4", build_k2mu2_plus_k1),
    "K44_negC6": ("no parameters", build_k44_neg_c6),
    "K44_minus_4K2_negP4K2": ("no parameters", build_k44_minus_4k2_neg_p4_k2),
    "BR_signed": ("no parameters", build_br_signed),
    "hadamard_srg": ("s: reachable Hadamard order", build_hadamard_srg),
    "conference_srg": ("mu_sq: odd prime power", build_conference_srg),
}


def build_named(name: str, *params) -> SignedGraph:
    if name not in NAMED_FAMILIES:
        raise ValueError(f"unknown family {name!r}; known: {sorted(NAMED_FAMILIES)}")
    _, builder = NAMED_FAMILIES[name]
    return builder(*params)
