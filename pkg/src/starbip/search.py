"""Independent brute-force oracle for the maximum order.

Enumerates every admissible star-set column, builds the orthogonality
compatibility graph, and finds an exact maximum clique.  The clique size
is the maximum number of star-set vertices, so the maximum order is
s + clique size.  Nothing here shares code with the closed-form engine.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from itertools import combinations, product
from math import comb, isqrt

import numpy as np

from .star import existence_check

DEFAULT_BUDGET_MS = 120_000
DEFAULT_COLUMN_BUDGET = 200_000


class BudgetExceeded(Exception):
    pass


def oracle_budget_ms(default: int = DEFAULT_BUDGET_MS) -> int:
    """Per-cell time budget, overridable through STARB_BUDGET_MS."""
    raw = os.environ.get("STARB_BUDGET_MS")
    if raw is None:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def _is_square(n: int) -> bool:
    return isqrt(n) ** 2 == n


def _sum_of_two_squares(n: int) -> bool:
    return any(_is_square(n - a * a) for a in range(isqrt(n) + 1))


def column_count_upper_bound(s: int, mu_sq: int) -> int:
    """Certified upper bound on the number of pairwise-orthogonal good columns.

    Always at most s (the columns are linearly independent).  A full s x s
    solution is a weighing matrix W(s, mu^2), which classically cannot
    exist when s is odd and mu^2 is not a perfect square (determinant), nor
    when s = 2 (mod 4) and mu^2 is not a sum of two squares.
    """
    if s % 2 == 1 and not _is_square(mu_sq):
        return s - 1
    if s % 4 == 2 and not _sum_of_two_squares(mu_sq):
        return s - 1
    return s


@dataclass(frozen=True)
class ColumnSet:
    s: int
    mu_sq: int
    columns: np.ndarray  # shape (count, s), entries in {-1,0,1}


@dataclass(frozen=True)
class CompatibilityGraph:
    columns: np.ndarray
    neighbors: tuple  # neighbors[i] is a bitmask over column indices


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple  # column indices
    exact: bool  # False when the time budget cut the search short


def enumerate_columns(
    s: int, mu_sq: int, budget: int = DEFAULT_COLUMN_BUDGET, reduce_signs: bool = True
) -> ColumnSet:
    """All good columns in deterministic lexicographic order.

    With reduce_signs, columns are taken up to global negation (first
    nonzero entry +1): negating a column is a switching at that star-set
    vertex, so nothing in scope distinguishes the two.
    """
    if not existence_check(s, mu_sq):
        raise ValueError(f"no graphs exist for s={s}, mu^2={mu_sq}")
    sign_count = 2 ** (mu_sq - 1) if reduce_signs else 2**mu_sq
    total = comb(s, mu_sq) * sign_count
    if total > budget:
        raise BudgetExceeded(f"{total} columns exceed budget {budget}")
    cols = np.zeros((total, s), dtype=np.int8)
    i = 0
    free = mu_sq - 1 if reduce_signs else mu_sq
    for support in combinations(range(s), mu_sq):
        for signs in product((1, -1), repeat=free):
            if reduce_signs:
                signs = (1,) + signs
            cols[i, list(support)] = signs
            i += 1
    return ColumnSet(s=s, mu_sq=mu_sq, columns=cols)


def build_compatibility_graph(cols: ColumnSet) -> CompatibilityGraph:
    """Edge iff the two columns have inner product exactly zero."""
    m = cols.columns.astype(np.int16)
    gram = m @ m.T
    adj = gram == 0
    np.fill_diagonal(adj, False)
    packed = np.packbits(adj, axis=1, bitorder="little")
    neighbors = tuple(int.from_bytes(row.tobytes(), "little") for row in packed)
    return CompatibilityGraph(columns=cols.columns, neighbors=neighbors)


class _CliqueSearch:
    """Tomita-style branch and bound: greedy coloring bound, bitset candidate
    sets, deterministic descending-degree root order."""

    def __init__(self, neighbors, deadline: float, stop_at: int):
        self.neighbors = neighbors
        self.deadline = deadline
        self.stop_at = stop_at
        self.best: list[int] = []
        self.best_size = 0
        self.timed_out = False
        self._ticks = 0

    def _check_time(self) -> bool:
        self._ticks += 1
        if self._ticks % 256 == 0 and time.monotonic() > self.deadline:
            self.timed_out = True
        return self.timed_out

    def _color_order(self, mask: int):
        neighbors = self.neighbors
        order: list[int] = []
        bounds: list[int] = []
        color = 0
        while mask:
            color += 1
            avail = mask
            while avail:
                bit = avail & -avail
                v = bit.bit_length() - 1
                order.append(v)
                bounds.append(color)
                mask ^= bit
                avail = (avail ^ bit) & ~neighbors[v]
        return order, bounds

    def expand(self, current: list[int], cand_mask: int):
        if self.timed_out or self._check_time():
            return
        if self.best_size >= self.stop_at:
            return
        order, bounds = self._color_order(cand_mask)
        for i in range(len(order) - 1, -1, -1):
            if len(current) + bounds[i] <= self.best_size:
                return
            v = order[i]
            current.append(v)
            sub = cand_mask & self.neighbors[v]
            if sub:
                self.expand(current, sub)
            elif len(current) > self.best_size:
                self.best_size = len(current)
                self.best = current.copy()
            current.pop()
            cand_mask ^= 1 << v
            if self.timed_out or self.best_size >= self.stop_at:
                return


def max_clique(
    g: CompatibilityGraph,
    time_budget_ms: int | None = None,
    stop_at: int | None = None,
    initial_bound: int = 0,
) -> CliqueResult:
    """Exact maximum clique (subject to stop_at, a certified upper bound at
    which the search may halt).  initial_bound prunes without providing a
    witness: callers pass a clique size already found elsewhere."""
    n = len(g.neighbors)
    if n == 0:
        return CliqueResult(size=0, witness=(), exact=True)
    if time_budget_ms is None:
        time_budget_ms = oracle_budget_ms()
    if stop_at is None:
        stop_at = n
    search = _CliqueSearch(
        g.neighbors, time.monotonic() + time_budget_ms / 1000.0, stop_at
    )
    search.best_size = max(0, initial_bound)
    degree = [nb.bit_count() for nb in g.neighbors]
    full_mask = 0
    for v in sorted(range(n), key=lambda v: (-degree[v], v)):
        full_mask |= 1 << v
    search.expand([], full_mask)
    found = search.best_size > max(0, initial_bound) or initial_bound == 0
    return CliqueResult(
        size=search.best_size,
        witness=tuple(sorted(search.best)) if found else (),
        exact=not search.timed_out,
    )


def _symmetric_max_clique(cols: ColumnSet, time_budget_ms: int | None) -> CliqueResult:
    """Exact maximum clique using the row symmetries of the column set.

    Level 1: row permutations and row negations act on columns and preserve
    orthogonality, and some maximum clique contains a column this group
    maps to the canonical pivot (+..+, 0..0); only cliques through the
    pivot are searched.

    Level 2: the pivot stabilizer (permutations inside/outside its support,
    negations outside) acts transitively on the pivot-compatible columns
    that share a signature (number of +1 entries on the pivot support), so
    only one representative per signature is branched on.
    """
    s, mu_sq = cols.s, cols.mu_sq
    if time_budget_ms is None:
        time_budget_ms = oracle_budget_ms()
    deadline = time.monotonic() + time_budget_ms / 1000.0
    m = cols.columns.astype(np.int16)
    pivot = np.zeros(s, dtype=np.int16)
    pivot[:mu_sq] = 1
    pivot_index = int(np.flatnonzero((cols.columns[:, :mu_sq] == 1).all(axis=1))[0])
    compatible = np.flatnonzero((m @ pivot) == 0)
    if compatible.size == 0:
        return CliqueResult(size=1, witness=(pivot_index,), exact=True)

    sub_cols = cols.columns[compatible]
    sub = build_compatibility_graph(
        ColumnSet(s=s, mu_sq=mu_sq, columns=sub_cols)
    )
    # signature: +1 count on the pivot support (equal to the -1 count there)
    plus_on_support = (sub_cols[:, :mu_sq] == 1).sum(axis=1)
    upper = column_count_upper_bound(s, mu_sq)

    best_size = 1
    best_witness = [pivot_index]
    exact = True
    reps = []
    seen = set()
    for local in range(len(compatible)):
        sig = int(plus_on_support[local])
        if sig not in seen:
            seen.add(sig)
            reps.append(local)
    for rep in reps:
        if best_size >= upper:
            break
        remaining = max(1.0, deadline - time.monotonic())
        cand = sub.neighbors[rep]
        if not cand and best_size < 2:
            best_size = 2
            best_witness = [pivot_index, int(compatible[rep])]
            continue
        res = _clique_below(sub.neighbors, cand, remaining, upper - 2, best_size - 2)
        if not res.exact:
            exact = False
        if 2 + res.size > best_size:
            best_size = 2 + res.size
            best_witness = [pivot_index, int(compatible[rep])] + [
                int(compatible[i]) for i in res.witness
            ]
    return CliqueResult(size=best_size, witness=tuple(sorted(best_witness)), exact=exact)


def _clique_below(neighbors, cand_mask: int, seconds: float, stop_at: int, initial: int):
    """Max clique restricted to a candidate bitmask."""
    if cand_mask == 0:
        return CliqueResult(size=0, witness=(), exact=True)
    search = _CliqueSearch(neighbors, time.monotonic() + seconds, max(stop_at, 0))
    search.best_size = max(0, initial)
    search.expand([], cand_mask)
    if search.best_size > max(0, initial):
        return CliqueResult(
            size=search.best_size,
            witness=tuple(sorted(search.best)),
            exact=not search.timed_out,
        )
    return CliqueResult(size=0, witness=(), exact=not search.timed_out)


def brute_force_max_order(
    s: int,
    mu_sq: int,
    budget: int = DEFAULT_COLUMN_BUDGET,
    time_budget_ms: int | None = None,
    use_row_symmetry: bool = True,
) -> CliqueResult:
    """Oracle maximum order: s + maximum number of pairwise-orthogonal
    good columns.  The witness indices refer to enumerate_columns order."""
    cols = enumerate_columns(s, mu_sq, budget=budget)
    if use_row_symmetry:
        res = _symmetric_max_clique(cols, time_budget_ms)
    else:
        res = max_clique(
            build_compatibility_graph(cols),
            time_budget_ms,
            stop_at=column_count_upper_bound(s, mu_sq),
        )
    return CliqueResult(size=s + res.size, witness=res.witness, exact=res.exact)


def witness_matrix(s: int, mu_sq: int, witness, budget: int = DEFAULT_COLUMN_BUDGET) -> np.ndarray:
    """Rebuild the s x k block matrix from witness column indices."""
    cols = enumerate_columns(s, mu_sq, budget=budget)
    return cols.columns[list(witness)].T.astype(np.int64)
