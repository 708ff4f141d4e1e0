"""Closed-form maximum-order engine with constructive witnesses.

For star complement order s and integer mu^2, the maximum graph order is
s + k where k is the largest number of pairwise-orthogonal good columns.
This module derives k from three ingredients:

  * exact base cases with combinatorial proofs: mu^2 = 1, s = mu^2 and
    s = mu^2 + 1 (parity arguments plus Hadamard/conference solutions);
  * a constructive lower bound: pack disjoint-support blocks built from
    Hadamard/conference Kronecker factorizations of mu^2 (this covers and
    extends the single-block-type "I_c tensor block, zero-padded" layout);
  * a certified counting upper bound: k <= s always, and a full s x s
    solution is excluded for odd s unless mu^2 is a perfect square, and
    for s = 2 (mod 4) unless mu^2 is a sum of two squares.

A verdict is Exact only when a proof closes the gap; otherwise honest
Bounds are reported.  Every Exact value and every lower bound carries a
witness template that passes verification.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .algebra import kronecker
from .constructions import classify_order, conference_of_order, hadamard_of_order
from .star import BipartiteTemplate, existence_check, verify_template

EXACT = "exact"
BOUNDS = "bounds"

HADAMARD_KIND = "hadamard-order"
CONFERENCE_KIND = "conference-parameter"
ONES_KIND = "all-ones"


@dataclass(frozen=True)
class FactorizationPlan:
    """One way to build a B-block from a factorization mu^2 = p * q.

    block_rows/block_cols describe the block; c copies are stacked on
    disjoint row sets.  p_kind/q_kind say how each factor is realized:
    as a Hadamard matrix of that order, as a conference matrix of order
    factor+1, or as an all-ones column (no orthogonality contributed).
    """

    p: int
    q: int
    p_kind: str
    q_kind: str
    c: int
    block_rows: int
    block_cols: int

    @property
    def rows(self) -> int:
        return self.c * self.block_rows

    @property
    def cols(self) -> int:
        return self.c * self.block_cols


def _factor_matrix(value: int, kind: str):
    if kind == HADAMARD_KIND:
        return hadamard_of_order(value)
    if kind == CONFERENCE_KIND:
        return conference_of_order(value + 1)
    if kind == ONES_KIND:
        return np.ones((value, 1), dtype=np.int64)
    raise ValueError(f"unknown factor kind {kind!r}")


def _block_shape(value: int, kind: str):
    if kind == HADAMARD_KIND:
        return value, value
    if kind == CONFERENCE_KIND:
        return value + 1, value + 1
    if kind == ONES_KIND:
        return value, 1
    raise ValueError(f"unknown factor kind {kind!r}")


def enumerate_factorization_plans(s: int, mu_sq: int) -> list[FactorizationPlan]:
    """All usable block plans from ordered divisor pairs p * q = mu^2.

    Each pair is tagged with the realizations its factors admit; the
    repetition count c is the largest number of disjoint copies fitting in
    s rows.  Plans with c = 0 (block taller than s) are dropped.  Order is
    deterministic: p ascending, then realization kinds.
    """
    if not existence_check(s, mu_sq):
        raise ValueError(f"no graphs exist for s={s}, mu^2={mu_sq}")
    kinds_of = {}

    def kinds(m: int) -> list[str]:
        if m not in kinds_of:
            cls = classify_order(m)
            out = []
            if cls.in_NH:
                out.append(HADAMARD_KIND)
            if cls.in_NC:
                out.append(CONFERENCE_KIND)
            kinds_of[m] = out
        return kinds_of[m]

    plans = []
    for p in range(1, mu_sq + 1):
        if mu_sq % p:
            continue
        q = mu_sq // p
        for p_kind in kinds(p):
            q_options = list(kinds(q))
            if p_kind in (HADAMARD_KIND, CONFERENCE_KIND):
                q_options.append(ONES_KIND)
            for q_kind in q_options:
                pr, pc = _block_shape(p, p_kind)
                qr, qc = _block_shape(q, q_kind)
                rows, cols = pr * qr, pc * qc
                c = s // rows
                if c >= 1:
                    plans.append(
                        FactorizationPlan(
                            p=p, q=q, p_kind=p_kind, q_kind=q_kind,
                            c=c, block_rows=rows, block_cols=cols,
                        )
                    )
    return plans


def build_extremal_template(s: int, mu_sq: int, plan: FactorizationPlan) -> BipartiteTemplate:
    """Stack c copies of the plan's block on disjoint rows, zero-pad to s."""
    if plan.p * plan.q != mu_sq:
        raise ValueError("plan does not factor mu^2")
    if plan.rows > s:
        raise ValueError("plan does not fit in s rows")
    left = _factor_matrix(plan.p, plan.p_kind)
    right = _factor_matrix(plan.q, plan.q_kind)
    if left is None or right is None:
        raise ValueError("required matrix order not reachable")
    block = kronecker(left, right)
    b = np.zeros((s, plan.cols), dtype=np.int64)
    for i in range(plan.c):
        b[i * plan.block_rows : (i + 1) * plan.block_rows,
          i * plan.block_cols : (i + 1) * plan.block_cols] = block
    t = BipartiteTemplate(B=b, mu_sq=mu_sq)
    assert verify_template(t)
    return t


def _best_packing(s: int, mu_sq: int):
    """Best mixed packing of plan blocks into s rows (unbounded knapsack).

    Returns (column count, list of blocks used) where each block is a
    single-copy FactorizationPlan.  Deterministic: the DP prefers the
    lexicographically earliest block list among ties.
    """
    blocks = {}
    for plan in enumerate_factorization_plans(s, mu_sq):
        key = plan.block_rows
        single = FactorizationPlan(
            p=plan.p, q=plan.q, p_kind=plan.p_kind, q_kind=plan.q_kind,
            c=1, block_rows=plan.block_rows, block_cols=plan.block_cols,
        )
        if key not in blocks or plan.block_cols > blocks[key].block_cols:
            blocks[key] = single
    choices = [blocks[r] for r in sorted(blocks)]
    best_cols = [0] * (s + 1)
    best_pick: list = [None] * (s + 1)
    for rows in range(1, s + 1):
        for blk in choices:
            if blk.block_rows <= rows:
                cand = best_cols[rows - blk.block_rows] + blk.block_cols
                if cand > best_cols[rows]:
                    best_cols[rows] = cand
                    best_pick[rows] = blk
    used = []
    rows = s
    while rows > 0 and best_pick[rows] is not None:
        used.append(best_pick[rows])
        rows -= best_pick[rows].block_rows
    return best_cols[s], used


def packing_template(s: int, mu_sq: int) -> BipartiteTemplate:
    """Witness template for the best packing lower bound."""
    k, used = _best_packing(s, mu_sq)
    b = np.zeros((s, max(k, 1)), dtype=np.int64)
    if k == 0:
        raise AssertionError("packing produced no columns despite s >= mu^2")
    r = c = 0
    for blk in used:
        left = _factor_matrix(blk.p, blk.p_kind)
        right = _factor_matrix(blk.q, blk.q_kind)
        block = kronecker(left, right)
        b[r : r + blk.block_rows, c : c + blk.block_cols] = block
        r += blk.block_rows
        c += blk.block_cols
    t = BipartiteTemplate(B=b, mu_sq=mu_sq)
    assert verify_template(t)
    return t


def _is_square(n: int) -> bool:
    return isqrt(n) ** 2 == n


def _is_sum_of_two_squares(n: int) -> bool:
    return any(_is_square(n - a * a) for a in range(isqrt(n) + 1))


def max_columns_upper_bound(s: int, mu_sq: int) -> int:
    """Counting upper bound on the number of columns (see module docstring)."""
    if s % 2 == 1 and not _is_square(mu_sq):
        return s - 1
    if s % 4 == 2 and not _is_sum_of_two_squares(mu_sq):
        return s - 1
    return s


@dataclass(frozen=True)
class MaxOrderResult:
    verdict: str  # EXACT or BOUNDS
    lo: int  # maximum order, or best proven lower bound
    hi: int
    witness: BipartiteTemplate  # achieves lo
    provenance: str

    @property
    def exact_value(self):
        return self.lo if self.verdict == EXACT else None


def _base_case_exact(s: int, mu_sq: int):
    """Exact values with combinatorial proofs; None when no proof applies.

    mu^2 = 1: identity block, 2s.  s = mu^2: columns are full sign vectors,
    so odd length caps at one column, length 2 mod 4 at two, and a
    reachable Hadamard order achieves s.  s = mu^2 + 1: columns carry one
    zero; unequal supports force an odd-length sign cancellation unless
    mu^2 is odd, which yields the three plus-one cases.
    """
    if mu_sq == 1:
        return 2 * s, "identity block"
    cls = classify_order(mu_sq)
    if s == mu_sq:
        if cls.in_NH:
            return 2 * s, "square block of reachable Hadamard order"
        if cls.odd:
            return s + 1, "square block, odd order (single column)"
        if cls.two_mod_four:
            return s + 2, "square block, order 2 mod 4 (column pair)"
        return None
    if s == mu_sq + 1 and s >= 3:
        if cls.in_NC:
            return 2 * s, "conference block of order s"
        if cls.in_NH:
            return s + mu_sq, "Hadamard block plus isolated row"
        if cls.two_mod_four:
            return s + 2, "one-zero columns, order 2 mod 4 (column pair)"
        return None
    return None


def formula_max_order(s: int, mu_sq: int) -> MaxOrderResult:
    """Maximum order of a signed bipartite graph with (sK1) as star
    complement for an eigenvalue with the given mu^2.

    Returns Exact when a proof pins the value (base cases above, or the
    packing witness meets the counting bound); otherwise Bounds whose
    lower end is constructive.
    """
    if not existence_check(s, mu_sq):
        raise ValueError(
            f"no graphs exist for s={s}, mu^2={mu_sq}: "
            "mu^2 must be a positive integer with s >= mu^2"
        )
    witness = packing_template(s, mu_sq)
    lo = s + witness.k
    hi = s + max_columns_upper_bound(s, mu_sq)
    base = _base_case_exact(s, mu_sq)
    if base is not None:
        value, why = base
        if value != lo:
            raise AssertionError(
                f"base case {why!r} gives {value} but packing witness gives {lo}"
            )
        return MaxOrderResult(EXACT, value, value, witness, why)
    if lo == hi:
        return MaxOrderResult(EXACT, lo, hi, witness, "block packing meets counting bound")
    return MaxOrderResult(
        BOUNDS, lo, hi, witness,
        f"block packing gives {lo}; counting bound gives {hi}",
    )
