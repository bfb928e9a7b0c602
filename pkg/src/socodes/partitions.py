"""Integer partitions in multiplicity form.

``Partition((3, 0, 1))`` has three 1-parts and one 3-part, so it is a
partition of 6.  This is the same data as a cycle type in S_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np


@dataclass(frozen=True)
class Partition:
    mult: tuple[int, ...]

    def __post_init__(self):
        if any(m < 0 for m in self.mult):
            raise ValueError("negative multiplicity")
        if self.mult and self.mult[-1] == 0:
            # canonical: no trailing zeros
            trimmed = list(self.mult)
            while trimmed and trimmed[-1] == 0:
                trimmed.pop()
            object.__setattr__(self, "mult", tuple(trimmed))

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        """From a list of part sizes, e.g. ``[3, 2, 2]``."""
        if any(p < 1 for p in parts):
            raise ValueError("parts must be positive")
        top = max(parts, default=0)
        mult = [0] * top
        for p in parts:
            mult[p - 1] += 1
        return cls(tuple(mult))

    def __getitem__(self, i: int) -> int:
        """lambda_i, the number of parts equal to i (1-based, 0 beyond support)."""
        if i < 1:
            raise IndexError("part sizes start at 1")
        return self.mult[i - 1] if i <= len(self.mult) else 0

    @property
    def n(self) -> int:
        return sum(i * m for i, m in self.items())

    def items(self) -> Iterator[tuple[int, int]]:
        """(part size, multiplicity) for every part size that occurs."""
        for i, m in enumerate(self.mult, start=1):
            if m:
                yield i, m

    def parts(self) -> list[int]:
        """Part sizes in non-increasing order."""
        out = []
        for i, m in sorted(self.items(), reverse=True):
            out.extend([i] * m)
        return out

    def __str__(self) -> str:
        return ",".join(map(str, self.parts())) or "()"


def partition_weight(lam: Partition) -> int:
    """z_lambda = prod_i lambda_i! i^lambda_i, the centralizer order in S_n."""
    out = 1
    for i, m in lam.items():
        out *= math.factorial(m) * i**m
    return out


def lambda_slice(lam: Partition, a: int, b: int) -> int:
    """Sum of lambda_i over i = a (mod b)."""
    if not 0 <= a < b:
        raise ValueError("need 0 <= a < b")
    return sum(m for i, m in lam.items() if i % b == a)


def partitions(n: int) -> Iterator[Partition]:
    """Every partition of n once, in descending lexicographic order of the
    multiplicity vector (1^n first)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    mult: list[int] = []

    def rec(i: int, rem: int):
        if rem == 0:
            yield Partition(tuple(mult))
            return
        for m in range(rem // i, -1, -1):
            left = rem - i * m
            # what is left must be made of parts > i
            if left and left <= i:
                continue
            mult.append(m)
            yield from rec(i + 1, left)
            mult.pop()

    yield from rec(1, n)


def partition_count(n: int) -> int:
    """p(n) via Euler's pentagonal recurrence (independent of ``partitions``)."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > m:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[m - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            j += 1
        p[m] = total
    return p[n]


@dataclass(frozen=True)
class PartitionTable:
    """All partitions of n as a dense multiplicity matrix plus class sizes
    n!/z_lambda, in ``partitions(n)`` order."""

    n: int
    mult: np.ndarray  # shape (p(n), max(n, 1)), int16
    class_sizes: np.ndarray  # object dtype, exact ints


def _table_blocks(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Multiplicity rows and z_lambda for all partitions of n, built from
    memoized blocks in the same order as ``partitions(n)``."""
    width = max(n, 1)
    memo: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}

    def block(rem: int, i: int) -> tuple[np.ndarray, np.ndarray]:
        # partitions of rem into parts >= i, columns i..n
        key = (rem, i)
        if key in memo:
            return memo[key]
        if rem == 0:
            out = (np.zeros((1, width - i + 1), dtype=np.int16), np.array([1], dtype=object))
            memo[key] = out
            return out
        mults, zs = [], []
        for m in range(rem // i, -1, -1):
            left = rem - i * m
            if left and left <= i:
                continue
            sub, subz = block(left, i + 1) if left else (np.zeros((1, width - i), dtype=np.int16), np.array([1], dtype=object))
            head = np.full((len(sub), 1), m, dtype=np.int16)
            mults.append(np.hstack([head, sub]))
            zs.append(subz * (math.factorial(m) * i**m))
        out = (np.vstack(mults), np.concatenate(zs))
        memo[key] = out
        return out

    if n == 0:
        return np.zeros((1, 1), dtype=np.int16), np.array([1], dtype=object)
    return block(n, 1)


@lru_cache(maxsize=4)
def partition_table(n: int) -> PartitionTable:
    if n < 0 or n > 400:
        raise ValueError("partition table supports 0 <= n <= 400")
    mult, z = _table_blocks(n)
    sizes = math.factorial(n) // z
    mult.setflags(write=False)
    sizes.setflags(write=False)
    return PartitionTable(n, mult, sizes)


def parse_partition(text: str) -> Partition:
    """``"3,2,2"`` -> parts 3, 2, 2.  ``"1^4,2"`` is accepted too."""
    parts: list[int] = []
    text = text.strip()
    if text in ("", "()"):
        return Partition(())
    for tok in text.split(","):
        tok = tok.strip()
        if "^" in tok:
            size, rep = tok.split("^")
            parts.extend([int(size)] * int(rep))
        else:
            parts.append(int(tok))
    return Partition.from_parts(parts)
