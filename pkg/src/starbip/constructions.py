"""Certified Hadamard and conference matrix constructors.

Every constructor verifies its Gram identity before returning, so a matrix
coming out of this module is certified by construction.  "Reachable"
Hadamard orders are the orders this module can actually build: 1, 2,
Sylvester powers of two, the two Paley families, and Kronecker products
of reachable orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import gf, is_prime_power, kronecker, prime_power, quadratic_character

SYLVESTER_CAP = 2**10
CONFERENCE_CAP = 200


def is_hadamard(m: np.ndarray) -> bool:
    m = np.asarray(m, dtype=np.int64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    n = m.shape[0]
    if not np.all(np.abs(m) == 1):
        return False
    return np.array_equal(m.T @ m, n * np.eye(n, dtype=np.int64))


def is_conference(m: np.ndarray) -> bool:
    m = np.asarray(m, dtype=np.int64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    n = m.shape[0]
    if np.any(np.diagonal(m) != 0):
        return False
    off = ~np.eye(n, dtype=bool)
    if not np.all(np.abs(m[off]) == 1):
        return False
    return np.array_equal(m.T @ m, (n - 1) * np.eye(n, dtype=np.int64))


H2 = np.array([[1, 1], [1, -1]], dtype=np.int64)


def sylvester(t: int) -> np.ndarray:
    """Hadamard matrix of order 2^t as a t-fold Kronecker power of H(2)."""
    if t < 0 or 2**t > SYLVESTER_CAP:
        raise ValueError(f"sylvester exponent {t} out of range")
    h = np.array([[1]], dtype=np.int64)
    for _ in range(t):
        h = kronecker(H2, h)
    return h


def _paley_core(q: int) -> np.ndarray:
    """The q x q matrix S[i][j] = chi(a_i - a_j) over GF(q)."""
    p, h = prime_power(q)
    field = gf(p, h)
    chi = [quadratic_character(field, a) for a in field.elements]
    s = np.zeros((q, q), dtype=np.int64)
    for i, a in enumerate(field.elements):
        for j, b in enumerate(field.elements):
            s[i, j] = chi[field.index(field.sub(a, b))]
    return s


def paley_conference(q: int) -> np.ndarray:
    """Conference matrix of order q+1 for an odd prime power q (q=1 allowed)."""
    if q == 1:
        return np.array([[0, 1], [1, 0]], dtype=np.int64)
    if q % 2 == 0 or not is_prime_power(q):
        raise ValueError(f"{q} is not an odd prime power")
    if q + 1 > CONFERENCE_CAP:
        raise ValueError(f"conference order {q + 1} above cap {CONFERENCE_CAP}")
    s = _paley_core(q)
    c = np.zeros((q + 1, q + 1), dtype=np.int64)
    c[0, 1:] = 1
    # chi(-1) = +1 exactly when q = 1 (mod 4); the border column sign makes
    # the Gram identity close in both cases (symmetric core vs skew core).
    c[1:, 0] = 1 if q % 4 == 1 else -1
    c[1:, 1:] = s
    assert is_conference(c)
    return c


def paley_hadamard_I(q: int) -> np.ndarray:
    """Hadamard matrix of order q+1 for a prime power q = 3 (mod 4)."""
    if not is_prime_power(q) or q % 4 != 3:
        raise ValueError(f"{q} is not a prime power congruent to 3 mod 4")
    c = paley_conference(q)  # skew: C^T = -C
    h = np.eye(q + 1, dtype=np.int64) + c
    assert is_hadamard(h)
    return h


def paley_hadamard_II(q: int) -> np.ndarray:
    """Hadamard matrix of order 2(q+1) for a prime power q = 1 (mod 4)."""
    if not is_prime_power(q) or q % 4 != 1:
        raise ValueError(f"{q} is not a prime power congruent to 1 mod 4")
    c = paley_conference(q)  # symmetric
    # 0 -> [[1,-1],[-1,-1]], +-1 -> +-[[1,1],[1,-1]]
    h = kronecker(c, H2) + kronecker(
        np.eye(q + 1, dtype=np.int64), np.array([[1, -1], [-1, -1]], dtype=np.int64)
    )
    assert is_hadamard(h)
    return h


HADAMARD_CAP = 1024


@lru_cache(maxsize=None)
def _hadamard_reach(n: int):
    """Build a Hadamard matrix of order n if reachable, else None (cached)."""
    if n == 1:
        return np.array([[1]], dtype=np.int64)
    if n == 2:
        return H2.copy()
    if n < 4 or n % 4 != 0 or n > HADAMARD_CAP:
        return None
    t = n.bit_length() - 1
    if n == 2**t:
        return sylvester(t)
    if is_prime_power(n - 1) and (n - 1) % 4 == 3:
        return paley_hadamard_I(n - 1)
    if n % 2 == 0 and is_prime_power(n // 2 - 1) and (n // 2 - 1) % 4 == 1:
        return paley_hadamard_II(n // 2 - 1)
    for a in range(2, int(n**0.5) + 1):
        if n % a:
            continue
        ha, hb = _hadamard_reach(a), _hadamard_reach(n // a)
        if ha is not None and hb is not None:
            return kronecker(ha, hb)
    return None


def hadamard_of_order(n: int):
    """A certified Hadamard matrix of order n, or None if not reachable."""
    if n < 1:
        raise ValueError("order must be positive")
    h = _hadamard_reach(n)
    if h is None:
        return None
    assert is_hadamard(h)
    return h


def conference_of_order(n: int):
    """A certified conference matrix of order n, or None if not reachable."""
    if n < 2:
        return None
    q = n - 1
    if q == 1 or (q % 2 == 1 and is_prime_power(q) and n <= CONFERENCE_CAP):
        return paley_conference(q)
    return None


@dataclass(frozen=True)
class OrderClass:
    m: int
    in_NH: bool  # reachable Hadamard order
    in_NC: bool  # odd prime power (conference parameter); 1 counts
    odd: bool
    two_mod_four: bool


def classify_order(m: int) -> OrderClass:
    if m < 1:
        raise ValueError("order must be positive")
    in_nh = _hadamard_reach(m) is not None if m <= HADAMARD_CAP else False
    in_nc = m == 1 or (m % 2 == 1 and is_prime_power(m))
    return OrderClass(
        m=m,
        in_NH=in_nh,
        in_NC=in_nc,
        odd=m % 2 == 1,
        two_mod_four=m % 4 == 2,
    )


# -- sign-matrix text format ---------------------------------------------------
# One row per line, characters from {+,-,0}.

_SIGN_CHAR = {1: "+", -1: "-", 0: "0"}
_CHAR_SIGN = {"+": 1, "-": -1, "0": 0}


def write_sign_matrix(m: np.ndarray) -> str:
    m = np.atleast_2d(np.asarray(m, dtype=np.int64))
    return "\n".join("".join(_SIGN_CHAR[int(x)] for x in row) for row in m) + "\n"


def read_sign_matrix(text: str) -> np.ndarray:
    rows = []
    for k, ln in enumerate(text.splitlines(), start=1):
        ln = ln.strip()
        if not ln:
            continue
        try:
            rows.append([_CHAR_SIGN[ch] for ch in ln])
        except KeyError as e:
            raise ValueError(f"line {k}: bad sign character {e.args[0]!r}") from e
    if not rows:
        raise ValueError("empty sign matrix")
    width = len(rows[0])
    for k, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ValueError(f"line {k}: ragged row width")
    return np.array(rows, dtype=np.int64)
