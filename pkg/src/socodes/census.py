"""Orbit counts of self-orthogonal codes and the closed-form side counts.

``psi_le(k, n)`` counts orbits of GL(k,2) x S_n on the k x n matrices with
XX^T = 0 by the Burnside lemma, summing over conjugacy classes A of
GL(k,2) and cycle types lambda of S_n:

    sum_A  1/|cent(A)|  sum_lambda  |Fix(A, P_lambda)| / z_lambda

Each class total is accumulated as an exact integer
``sum_lambda |Fix| * n!/z_lambda`` and only divided at the end.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .fixpoints import FixEvaluator
from .glclasses import enumerate_classes, gl_order
from .partitions import lambda_slice, partition_table, partition_weight, partitions
from .quadform import QType, all_types, count_types, scalar, zero_count

DEFAULT_CHUNK = 1024


@dataclass(frozen=True)
class CensusResult:
    k: int
    n: int
    psi_le: int
    contributions: tuple[tuple[str, Fraction], ...]
    elapsed: float


@lru_cache(maxsize=None)
def class_evaluators(k: int) -> tuple[FixEvaluator, ...]:
    return tuple(FixEvaluator.of(c.rep) for c in enumerate_classes(k))


def _chunk_total(k: int, class_index: int, n: int, start: int, stop: int) -> int:
    table = partition_table(n)
    ev = class_evaluators(k)[class_index]
    return ev.weighted_sum(table.mult[start:stop], table.class_sizes[start:stop])


def _work_items(k: int, n: int, chunk: int) -> list[tuple[int, int, int, int, int]]:
    count = len(partition_table(n).class_sizes)
    items = []
    for ci in range(len(enumerate_classes(k))):
        for start in range(0, count, chunk):
            items.append((k, ci, n, start, min(start + chunk, count)))
    return items


def _run(item: tuple[int, int, int, int, int]) -> int:
    return _chunk_total(*item)


def class_totals(k: int, n: int, workers: int = 1, chunk: int = DEFAULT_CHUNK) -> list[int]:
    """Per class: sum over lambda of |Fix(A, P_lambda)| * n!/z_lambda."""
    if chunk < 1:
        raise ValueError("chunk size must be positive")
    items = _work_items(k, n, chunk)
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_run, items, chunksize=max(1, len(items) // (4 * workers))))
    else:
        partials = [_run(it) for it in items]
    totals = [0] * len(enumerate_classes(k))
    for (_, ci, _, _, _), part in zip(items, partials):
        totals[ci] += part
    return totals


def psi_le(k: int, n: int, workers: int = 1, chunk: int = DEFAULT_CHUNK) -> CensusResult:
    """Number of inequivalent self-orthogonal codes of length n and
    dimension at most k."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    t0 = time.perf_counter()
    nfact = math.factorial(n)
    classes = enumerate_classes(k)
    contributions = []
    total = Fraction(0)
    for cls, s in zip(classes, class_totals(k, n, workers, chunk)):
        frac = Fraction(s, cls.cent_order * nfact)
        contributions.append((cls.label, frac))
        total += frac
    if total.denominator != 1:
        raise ArithmeticError(f"Burnside sum for k={k}, n={n} is not an integer: {total}")
    return CensusResult(k, n, int(total), tuple(contributions), time.perf_counter() - t0)


def psi(k: int, n: int, workers: int = 1, chunk: int = DEFAULT_CHUNK) -> int:
    """Number of inequivalent self-orthogonal [n, k] codes."""
    if k < 1:
        raise ValueError("need k >= 1")
    value = psi_le(k, n, workers, chunk).psi_le - psi_le(k - 1, n, workers, chunk).psi_le
    if value < 0:
        raise ArithmeticError("negative difference of orbit counts")
    return value


def psi_table(kmax: int, nmax: int, workers: int = 1, chunk: int = DEFAULT_CHUNK) -> list[list[int]]:
    """rows n = 1..nmax, columns k = 0..kmax of psi_le."""
    return [[psi_le(k, n, workers, chunk).psi_le for k in range(kmax + 1)] for n in range(1, nmax + 1)]


def psi_le2_closed(n: int) -> int:
    h, q, s = n // 2, n // 4, n // 6
    val = Fraction(s + 1, 3) + Fraction((h - q + 1) * (q + 1), 2) + Fraction((h + 3) * (h + 2) * (h + 1), 36)
    if val.denominator != 1:
        raise ArithmeticError(f"closed form not integral at n={n}")
    return int(val)


def phi(n: int, k: int) -> int:
    """Number of self-orthogonal [n, k] codes (not up to equivalence)."""
    if n < 0 or k < 0:
        raise ValueError("need n, k >= 0")
    if k == 0:
        return 1
    if k > n // 2:
        return 0
    den = 1
    for j in range(1, k + 1):
        den *= (1 << j) - 1
    if n % 2:
        num = 1
        for j in range(1, k + 1):
            num *= (1 << (n + 1 - 2 * j)) - 1
    else:
        num = (1 << (n - k)) - 1
        for j in range(1, k):
            num *= (1 << (n - 2 * j)) - 1
    if num % den:
        raise ArithmeticError(f"non-integral code count for n={n}, k={k}")
    return num // den


def s_count(k: int, n: int) -> int:
    """|{X in M_{k x n} : XX^T = 0}| by rank: each rank-l matrix is a
    full-rank l-frame times a basis of a self-orthogonal [n, l] code."""
    total = 0
    for l in range(0, min(k, n // 2) + 1):
        frames = 1 << (l * (l - 1) // 2)
        for j in range(k - l + 1, k + 1):
            frames *= (1 << j) - 1
        total += phi(n, l) * frames
    return total


def _delta(x: int) -> int:
    return 1 if x > 0 else 0


def s_count_alt(k: int, n: int) -> int:
    """Same count as ``s_count`` from the zero counts of the forms
    x M x^T summed over all forms M in k variables."""
    if k == 0:
        return 1
    a = n
    total = Fraction(0)
    for r in range(0, k // 2 + 1):
        ratio = Fraction(1)
        for i in range(1, 2 * r + 1):
            ratio *= (1 << (k - 2 * r + i)) - 1
        for i in range(1, r + 1):
            ratio /= (1 << (2 * i)) - 1
        sign = -1 if a % 2 else 1
        bracket = (
            Fraction(2) ** (k * a + r)
            + Fraction(2) ** (k * a - 1 - r * a) * ((1 << r) + 1 + sign * ((1 << r) - 1))
            + Fraction(2) ** (r + 1) * ((1 << (k - 2 * r)) - 1) * (Fraction(2) ** (k * a) - _delta(a) * Fraction(2) ** (k * a - 1))
        )
        total += ratio * Fraction(2) ** (r * r - 1) * bracket
    val = -Fraction(2) ** (k * a) + Fraction(1, 2 ** ((k + 2) * (k - 1) // 2)) * total
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral S count for k={k}, n={n}")
    return int(val)


def s_count_by_types(k: int, n: int) -> int:
    """Same count again, summing N(k, r, u, v) times the zero count of
    n copies of a type-(k, r, u, v) form."""
    total = sum(count_types(*t) * zero_count(scalar(n, QType(*t))) for t in all_types(k))
    L = k * (k + 1) // 2
    if L == 0:
        return 1
    return total // (1 << (L - 1)) - (1 << (k * n))


def mass_sum(n: int, aut_orders: Iterable[int]) -> Fraction:
    """n! * sum 1/|Aut(C_i)|: how many codes the listed classes account for."""
    nfact = math.factorial(n)
    total = Fraction(0)
    for order in aut_orders:
        if order < 1:
            raise ValueError("automorphism group orders are positive")
        total += Fraction(nfact, order)
    return total


def identity_class_total(k: int, n: int) -> Fraction:
    """Identity-class share of psi_le, from |Fix(I_k, P)| = 2^{k l02} |S_{k x l12}|."""
    acc = Fraction(0)
    for lam in partitions(n):
        acc += Fraction((1 << (k * lambda_slice(lam, 0, 2))) * s_count(k, lambda_slice(lam, 1, 2)), partition_weight(lam))
    return acc / gl_order(k)


def rows_to_psi(table: Sequence[Sequence[int]]) -> list[list[int]]:
    """psi_le rows -> psi rows (column 0 kept as is)."""
    return [[row[0]] + [row[j] - row[j - 1] for j in range(1, len(row))] for row in table]
