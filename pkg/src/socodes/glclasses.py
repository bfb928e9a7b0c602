"""Conjugacy classes of GL(k, 2) from elementary divisors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .gf2 import (
    GF2Matrix,
    GF2Poly,
    companion,
    direct_sum,
    mul,
    multiplicative_order,
    poly_mod,
    poly_pow,
    rank,
)


@dataclass(frozen=True)
class EDEntry:
    f: GF2Poly
    power: int
    mult: int


@dataclass(frozen=True)
class EDProfile:
    """Elementary divisors ``f^power``, each repeated ``mult`` times.

    Entries are sorted by (degree of f, f, power).
    """

    entries: tuple[EDEntry, ...]

    def __post_init__(self):
        keys = [(e.f, e.power) for e in self.entries]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (f, power) in profile")
        for e in self.entries:
            if e.power < 1 or e.mult < 1:
                raise ValueError("powers and multiplicities must be positive")
            if not e.f.bits & 1:
                raise ValueError(f"{e.f} is divisible by x")

    @classmethod
    def of(cls, entries) -> "EDProfile":
        merged: dict[tuple[GF2Poly, int], int] = {}
        for f, i, mu in entries:
            if not isinstance(f, GF2Poly):
                f = GF2Poly(f)
            merged[(f, i)] = merged.get((f, i), 0) + mu
        ordered = sorted(merged.items(), key=lambda kv: (kv[0][0].degree, kv[0][0].bits, kv[0][1]))
        return cls(tuple(EDEntry(f, i, mu) for (f, i), mu in ordered))

    @property
    def k(self) -> int:
        return sum(e.mult * e.power * e.f.degree for e in self.entries)

    def divisors(self) -> list[GF2Poly]:
        """The elementary divisors, listed with repetition."""
        out = []
        for e in self.entries:
            out.extend([poly_pow(e.f, e.power)] * e.mult)
        return out

    def polys(self) -> list[GF2Poly]:
        return sorted({e.f for e in self.entries}, key=lambda f: (f.degree, f.bits))

    def text(self) -> str:
        parts = []
        for e in self.entries:
            parts.extend([f"({e.f})^{e.power}"] * e.mult)
        return ",".join(parts)


@dataclass(frozen=True)
class ConjClass:
    k: int
    profile: EDProfile
    rep: GF2Matrix
    cent_order: int
    t: int

    @property
    def label(self) -> str:
        return f"k{self.k}:{self.profile.text()}"

    @property
    def size(self) -> int:
        return gl_order(self.k) // self.cent_order


def is_irreducible(f: int) -> bool:
    d = f.bit_length() - 1
    if d < 1:
        return False
    for g in range(2, 1 << (d // 2 + 1)):
        if g.bit_length() - 1 <= d // 2 and poly_mod(f, g) == 0:
            return False
    return True


@lru_cache(maxsize=None)
def irreducible_polys(max_deg: int) -> tuple[GF2Poly, ...]:
    """Monic irreducibles other than x of degree <= max_deg, by trial division."""
    out = []
    for d in range(1, max_deg + 1):
        for bits in range(1 << d, 1 << (d + 1)):
            if bits & 1 and is_irreducible(bits):
                out.append(GF2Poly(bits))
    return tuple(out)


def gl_order(k: int) -> int:
    out = 1
    for i in range(k):
        out *= (1 << k) - (1 << i)
    return out


def _int_partitions(m: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of m as non-increasing tuples of parts."""
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for p in range(min(m, largest), 0, -1):
        for rest in _int_partitions(m - p, p):
            yield (p,) + rest


def centralizer_order(profile: EDProfile, q: int = 2) -> int:
    total = Fraction(1)
    for f in profile.polys():
        d = f.degree
        mu = {e.power: e.mult for e in profile.entries if e.f == f}
        for i, mu_i in mu.items():
            s = sum(min(i, j) * mu_j for j, mu_j in mu.items())
            total *= Fraction(q) ** (d * mu_i * s)
            for j in range(1, mu_i + 1):
                total *= 1 - Fraction(1, q ** (d * j))
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral centralizer order for {profile.text()}")
    return int(total)


def class_representative(profile: EDProfile) -> GF2Matrix:
    blocks = []
    for e in profile.entries:
        blk = companion(poly_pow(e.f, e.power))
        blocks.extend([blk] * e.mult)
    return direct_sum(*blocks)


def _profiles(k: int) -> Iterator[EDProfile]:
    polys = irreducible_polys(k) if k else ()

    def rec(idx: int, remaining: int, acc: list):
        if remaining == 0:
            yield EDProfile.of(acc)
            return
        if idx == len(polys):
            return
        f = polys[idx]
        d = f.degree
        # how much of the degree budget f takes: d * (sum of its powers)
        for used in range(remaining // d, -1, -1):
            if used == 0:
                yield from rec(idx + 1, remaining, acc)
                continue
            for parts in sorted(_int_partitions(used), key=len, reverse=True):
                counts: dict[int, int] = {}
                for p in parts:
                    counts[p] = counts.get(p, 0) + 1
                extra = [(f, i, mu) for i, mu in sorted(counts.items())]
                yield from rec(idx + 1, remaining - used * d, acc + extra)

    yield from rec(0, k, [])


@lru_cache(maxsize=None)
def enumerate_classes(k: int) -> tuple[ConjClass, ...]:
    """One class per elementary-divisor profile of degree k.

    Order: polynomials by (degree, bits), the finest power split first,
    so the identity class leads.
    k = 0 yields the single class of the empty matrix.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = []
    for prof in _profiles(k):
        rep = class_representative(prof)
        out.append(ConjClass(k, prof, rep, centralizer_order(prof), multiplicative_order(rep)))
    return tuple(out)


def find_class(k: int, label: str) -> ConjClass:
    for c in enumerate_classes(k):
        if c.label == label:
            return c
    # allow 1-based positional addressing as well
    if label.isdigit() and 1 <= int(label) <= len(enumerate_classes(k)):
        return enumerate_classes(k)[int(label) - 1]
    raise KeyError(f"no class {label!r} in GL({k},2)")


def gl_elements(k: int) -> Iterator[GF2Matrix]:
    """All invertible k x k matrices (only sensible for k <= 4)."""
    def rec(rows: list[int], span: frozenset[int]):
        if len(rows) == k:
            yield GF2Matrix(k, k, tuple(rows))
            return
        for r in range(1, 1 << k):
            if r not in span:
                yield from rec(rows + [r], span | {v ^ r for v in span})

    yield from rec([], frozenset({0}))


def brute_centralizer_order(a: GF2Matrix) -> int:
    k = a.nrows
    if k > 4:
        raise ValueError("brute-force centralizer limited to k <= 4")
    return sum(1 for g in gl_elements(k) if mul(g, a) == mul(a, g))


def conjugate(a: GF2Matrix, g: GF2Matrix) -> GF2Matrix:
    """g a g^-1."""
    return mul(mul(g, a), inverse(g))


def inverse(g: GF2Matrix) -> GF2Matrix:
    k = g.nrows
    # row-reduce [g | I]
    work = [g.rows[i] | (1 << (k + i)) for i in range(k)]
    for col in range(k):
        piv = next((i for i in range(col, k) if (work[i] >> col) & 1), None)
        if piv is None:
            raise ValueError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        for i in range(k):
            if i != col and (work[i] >> col) & 1:
                work[i] ^= work[col]
    return GF2Matrix(k, k, tuple(w >> k for w in work))


def random_invertible(k: int, rng) -> GF2Matrix:
    while True:
        rows = tuple(rng.randrange(1 << k) for _ in range(k))
        m = GF2Matrix(k, k, rows)
        if rank(m) == k:
            return m


__all__ = [
    "ConjClass",
    "EDEntry",
    "EDProfile",
    "brute_centralizer_order",
    "centralizer_order",
    "class_representative",
    "conjugate",
    "enumerate_classes",
    "find_class",
    "gl_elements",
    "gl_order",
    "inverse",
    "irreducible_polys",
    "random_invertible",
]
