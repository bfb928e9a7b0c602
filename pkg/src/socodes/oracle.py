"""Ground truth by brute force.

Two routes that share nothing with the fixed-point engine:

* ``psi_le_bruteforce`` lists every self-orthogonal code of length n and
  counts S_n-classes through an exhaustive canonical form (n <= 8).
* ``psi_le_columns`` applies Burnside to GL(k,2) alone, acting on
  multisets of columns: a k x n matrix up to column order is a multiset
  of n vectors of GF(2)^k, and XX^T = 0 only depends on which vectors
  occur an odd number of times.  This scales to the full n <= 40 range.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .glclasses import enumerate_classes

MAX_ENUM_N = 10
MAX_CANON_N = 8


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class Code:
    n: int
    words: tuple[int, ...]  # sorted; bit j is coordinate j

    @classmethod
    def span(cls, n: int, gens) -> "Code":
        words = {0}
        for g in gens:
            words |= {w ^ g for w in words}
        return cls(n, tuple(sorted(words)))

    @property
    def dim(self) -> int:
        return len(self.words).bit_length() - 1

    def check(self) -> None:
        ws = set(self.words)
        if 0 not in ws or len(ws) != 1 << self.dim or len(ws) != len(self.words):
            raise ValueError("not a linear code")
        for x in self.words:
            for y in self.words:
                if x ^ y not in ws:
                    raise ValueError("not closed under addition")
                if _parity(x & y):
                    raise ValueError("not self-orthogonal")

    def permuted(self, perm) -> "Code":
        """Coordinate j moves to position perm[j]."""
        out = []
        for w in self.words:
            v = 0
            for j in range(self.n):
                if (w >> j) & 1:
                    v |= 1 << perm[j]
            out.append(v)
        return Code(self.n, tuple(sorted(out)))


def enumerate_so_codes(n: int, kmax: int) -> list[Code]:
    """Every self-orthogonal code in GF(2)^n of dimension <= kmax, once."""
    if n < 1 or n > MAX_ENUM_N:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUM_N}")
    if kmax < 0 or kmax > n // 2:
        raise ValueError("kmax must lie in [0, n // 2]")
    even = [v for v in range(1, 1 << n) if not _parity(v)]
    layer = {frozenset([0])}
    out = [Code(n, (0,))]
    for _ in range(kmax):
        nxt: set[frozenset[int]] = set()
        for code in layer:
            for v in even:
                if v in code or any(_parity(v & w) for w in code):
                    continue
                nxt.add(code | {v ^ w for w in code})
        layer = nxt
        out.extend(Code(n, tuple(sorted(c))) for c in sorted(layer, key=lambda c: sorted(c)))
    return out


@lru_cache(maxsize=None)
def _perm_powers(n: int) -> np.ndarray:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return np.left_shift(np.int64(1), perms)  # shape (n!, n)


def canonical_form(c: Code) -> str:
    """Lexicographically least sorted word list over all n! coordinate
    permutations, as comma-separated n-bit strings."""
    if c.n > MAX_CANON_N:
        raise ValueError(f"canonical form needs n <= {MAX_CANON_N}")
    bits = np.array([[(w >> j) & 1 for j in range(c.n)] for w in c.words], dtype=np.int64)
    images = np.sort(bits @ _perm_powers(c.n).T, axis=0)  # (words, n!)
    best = np.lexsort(images[::-1])[0]
    return ",".join(format(int(w), f"0{c.n}b")[::-1] for w in images[:, best])


@lru_cache(maxsize=None)
def _canonical_by_dim(n: int) -> tuple[frozenset[str], ...]:
    forms: list[set[str]] = [set() for _ in range(n // 2 + 1)]
    for code in enumerate_so_codes(n, n // 2):
        forms[code.dim].add(canonical_form(code))
    return tuple(frozenset(f) for f in forms)


def psi_le_bruteforce(k: int, n: int) -> int:
    if n < 1 or n > MAX_CANON_N:
        raise ValueError(f"brute-force orbit count needs 1 <= n <= {MAX_CANON_N}")
    by_dim = _canonical_by_dim(n)
    return sum(len(f) for f in by_dim[: min(k, n // 2) + 1])


# -- Burnside over GL(k, 2) on column multisets --------------------------

_P61 = (1 << 61) - 1


def _gram_bits(v: int, k: int) -> int:
    out = 0
    e = 0
    for p in range(k):
        for q in range(p, k):
            if (v >> p) & 1 and (v >> q) & 1:
                out |= 1 << e
            e += 1
    return out


def _vector_cycles(rows: tuple[int, ...], k: int) -> list[tuple[int, int]]:
    """(length, xor of v v^T over the cycle) for each cycle of v -> Av."""
    def apply(v: int) -> int:
        return sum(_parity(r & v) << i for i, r in enumerate(rows))

    seen: set[int] = set()
    out = []
    for v in range(1 << k):
        if v in seen:
            continue
        length, gram, w = 0, 0, v
        while w not in seen:
            seen.add(w)
            gram ^= _gram_bits(w, k)
            length += 1
            w = apply(w)
        out.append((length, gram))
    return out


def _fixed_multisets(cycles: list[tuple[int, int]], k: int, n: int, modulus: int | None) -> int:
    """Number of A-invariant column multisets of size n with zero Gram
    matrix, modulo ``modulus`` (None: wrap-around mod 2^64)."""
    states = 1 << (k * (k + 1) // 2)
    dtype = np.uint64 if modulus is None else np.int64
    f = np.zeros((states, n + 1), dtype=dtype)
    f[0, 0] = 1
    idx = np.arange(states)
    for length, gram in cycles:
        # even multiplicity on the cycle: geometric series in x^(2*length)
        h = f.copy()
        for d in range(2 * length, n + 1):
            h[:, d] += h[:, d - 2 * length]
            if modulus is not None:
                h[:, d] %= modulus
        new = h.copy()
        if length <= n:
            new[:, length:] += h[idx ^ gram, : n + 1 - length]
            if modulus is not None:
                new %= modulus
        f = new
    return int(f[0, n])


def fixed_column_multisets(rows: tuple[int, ...], k: int, n: int) -> int:
    cycles = _vector_cycles(rows, k)
    bound = math.comb(n + len(cycles) - 1, n)
    lo = _fixed_multisets(cycles, k, n, None)
    if bound < 1 << 64:
        return lo
    # combine the residues mod 2^64 and mod 2^61 - 1
    hi = _fixed_multisets(cycles, k, n, _P61)
    m1 = 1 << 64
    if bound >= m1 * _P61:
        raise OverflowError("count too large for two moduli")
    x = lo + m1 * (((hi - lo) * pow(m1, -1, _P61)) % _P61)
    return x


def psi_le_columns(k: int, n: int) -> int:
    """psi_le by Burnside over GL(k, 2) on column multisets."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    if k == 0:
        return 1
    total = Fraction(0)
    for cls in enumerate_classes(k):
        total += Fraction(fixed_column_multisets(cls.rep.rows, k, n), cls.cent_order)
    if total.denominator != 1:
        raise ArithmeticError("column-orbit Burnside sum is not an integer")
    return int(total)
