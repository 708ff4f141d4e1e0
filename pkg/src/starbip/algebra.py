"""Exact arithmetic substrate: finite fields GF(p^h), Kronecker products,
and integer matrix rank.

All matrix work downstream is done over plain integers (numpy int arrays
holding small values); nothing in this package touches floating point.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(n: int):
    """Return (p, h) with n = p**h and p prime, or None."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if p * p > n:
            break
        if n % p:
            continue
        if not is_prime(p):
            continue
        h = 0
        m = n
        while m % p == 0:
            m //= p
            h += 1
        return (p, h) if m == 1 else None
    return (n, 1) if is_prime(n) else None


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


class GF:
    """The finite field GF(p^h), elements represented as coefficient tuples.

    An element is a tuple (c0, ..., c_{h-1}) of integers mod p, standing for
    the polynomial c0 + c1*x + ... modulo a fixed monic irreducible modulus
    of degree h.  The modulus is the smallest irreducible in lexicographic
    coefficient order, so a field is fully determined by (p, h) and every
    construction built on it is byte-reproducible.

    Element enumeration order: element i has coefficients equal to the
    base-p digits of i, least significant first.  In particular element 0
    is zero and element 1 is one.
    """

    def __init__(self, p: int, h: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if not 1 <= h <= 8:
            raise ValueError(f"extension degree h={h} out of range [1, 8]")
        self.p = p
        self.h = h
        self.q = p**h
        self.modulus = self._find_modulus()
        self.elements = [self.element(i) for i in range(self.q)]
        self.zero = self.elements[0]
        self.one = self.elements[1]

    # -- construction helpers -------------------------------------------------

    def _find_modulus(self):
        """Smallest (lex coefficient order) monic irreducible of degree h."""
        p, h = self.p, self.h
        if h == 1:
            return (0, 1)  # x itself; reduction is just mod p
        for tail in itertools.product(range(p), repeat=h):
            poly = tuple(tail) + (1,)  # monic degree-h polynomial
            if self._irreducible(poly):
                return poly
        raise AssertionError("no irreducible polynomial found")  # unreachable

    def _irreducible(self, poly) -> bool:
        """Trial division by every monic polynomial of degree 1..h//2."""
        h = len(poly) - 1
        for d in range(1, h // 2 + 1):
            for tail in itertools.product(range(self.p), repeat=d):
                div = tuple(tail) + (1,)
                if not any(self._poly_mod(poly, div)):
                    return False
        return True

    def _poly_mod(self, a, m):
        """Remainder of polynomial a modulo monic polynomial m, coeffs mod p."""
        a = list(a)
        dm = len(m) - 1
        for i in range(len(a) - 1, dm - 1, -1):
            c = a[i] % self.p
            if c:
                for j in range(dm + 1):
                    a[i - dm + j] = (a[i - dm + j] - c * m[j]) % self.p
        return tuple(c % self.p for c in a[:dm]) if dm else ()

    # -- element representation ----------------------------------------------

    def element(self, i: int):
        """The i-th element in enumeration order, as a coefficient tuple."""
        if not 0 <= i < self.q:
            raise ValueError(f"element index {i} out of range for GF({self.q})")
        coeffs = []
        for _ in range(self.h):
            coeffs.append(i % self.p)
            i //= self.p
        return tuple(coeffs)

    def index(self, a) -> int:
        return sum(c * self.p**k for k, c in enumerate(a))

    # -- arithmetic ------------------------------------------------------------

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = [0] * (2 * self.h - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        if self.h == 1:
            return (prod[0] % self.p,)
        r = self._poly_mod(prod, self.modulus)
        return r + (0,) * (self.h - len(r))

    def pow(self, a, e: int):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.q - 2)


@lru_cache(maxsize=None)
def gf(p: int, h: int = 1) -> GF:
    """Construct (and cache) the field GF(p^h)."""
    return GF(p, h)


def quadratic_character(field: GF, a) -> int:
    """0 for zero, +1 for nonzero squares, -1 for non-squares.

    Computed as a^((q-1)/2), which lands on the field's one or minus-one.
    Only defined for fields of odd order.
    """
    if field.q % 2 == 0:
        raise ValueError("quadratic character requires a field of odd order")
    if a == field.zero:
        return 0
    return 1 if field.pow(a, (field.q - 1) // 2) == field.one else -1


def kronecker(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of integer matrices."""
    return np.kron(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))


def integer_rank(m: np.ndarray) -> int:
    """Rank over the rationals via fraction-free (Bareiss) elimination.

    Exact for any integer matrix; intermediate values stay integral.
    """
    a = [[int(x) for x in row] for row in np.atleast_2d(np.asarray(m))]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


# -- IntMatrix text format -----------------------------------------------------
# First line "rows cols", then one whitespace-separated row per line.


def write_int_matrix(m: np.ndarray) -> str:
    m = np.atleast_2d(np.asarray(m, dtype=np.int64))
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    lines += [" ".join(str(int(x)) for x in row) for row in m]
    return "\n".join(lines) + "\n"


def read_int_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        rows, cols = map(int, lines[0].split())
    except ValueError as e:
        raise ValueError(f"bad matrix header {lines[0]!r}") from e
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} rows, got {len(lines) - 1}")
    data = []
    for k, ln in enumerate(lines[1:], start=2):
        row = [int(tok) for tok in ln.split()]
        if len(row) != cols:
            raise ValueError(f"line {k}: expected {cols} entries, got {len(row)}")
        data.append(row)
    return np.array(data, dtype=np.int64)
