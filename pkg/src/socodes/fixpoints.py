"""Counting matrices X with AX = XP and XX^T = 0.

For an invertible A of order t, the count for a permutation of cycle type
lambda factors as ``2^free * n(A)``.  ``n(A)`` counts tuples of matrices
``Y_d`` (one per divisor d of t) satisfying a system of L linear equations
in the Gram entries ``z_ij = (Y_d Y_d^T)_ij``.  Each equation is a
quadratic form in the entries of the ``Y_d``; a character sum over all
2^L combinations of the equations turns the count into zero counts of
single quadratic forms, which only depend on their Dickson types.

Everything that does not depend on lambda (the kernels ``B_d``, the
equations ``C_l^(d)`` and the grouped type tuples) is computed once per
matrix A in ``build_context`` / ``build_profile``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .gf2 import (
    GF2Matrix,
    add,
    direct_sum,
    kernel_basis,
    kron_identity,
    matrix_pow,
    mul,
    multiplicative_order,
    rank,
    row_basis,
)
from .partitions import Partition
from .quadform import QType, ZERO_TYPE, boxplus, classify_rows, scalar, zero_count

MAX_CONSTRAINTS = 24
MAX_BRUTE_DIM = 24


def nu2(n: int) -> int:
    """2-adic valuation of a positive integer."""
    return (n & -n).bit_length() - 1


def divisors(t: int) -> list[int]:
    return [d for d in range(1, t + 1) if t % d == 0]


def _pairs(s: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(s) for j in range(i, s)]


@dataclass(frozen=True)
class FixContext:
    k: int
    t: int
    divisors: tuple[int, ...]
    s: Mapping[int, int]
    B: Mapping[int, GF2Matrix]
    L: int
    C: Mapping[tuple[int, int], GF2Matrix]  # (l, d) -> upper-triangular s_d x s_d

    @property
    def nu_t(self) -> int:
        return nu2(self.t)

    def constraint(self, l: int, d: int) -> GF2Matrix:
        return self.C[(l, d)]


@dataclass(frozen=True)
class TypeProfile:
    divisors: tuple[int, ...]
    entries: tuple[tuple[tuple[QType, ...], int], ...]

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def as_dict(self) -> dict[tuple[QType, ...], int]:
        return dict(self.entries)


def build_context(a: GF2Matrix, basis: Callable[[GF2Matrix], GF2Matrix] = kernel_basis) -> FixContext:
    """Kernels B_d of A^d - I and an independent basis of the linear
    equations that ``sum_d sum_{j<d} A^j B_d Z_d B_d^T (A^j)^T = 0`` imposes
    on the symmetric unknowns ``Z_d``.

    ``basis`` picks the kernel basis; any choice gives the same counts.
    """
    if not a.is_square():
        raise ValueError("A must be square")
    k = a.nrows
    if rank(a) != k:
        raise ValueError("A must be invertible")
    t = multiplicative_order(a)
    divs = divisors(t)
    ident = GF2Matrix.identity(k)
    s: dict[int, int] = {}
    B: dict[int, GF2Matrix] = {}
    for d in divs:
        bd = basis(add(matrix_pow(a, d), ident))
        if bd.nrows != k or bd.ncols != k - rank(add(matrix_pow(a, d), ident)):
            raise ValueError(f"basis for d={d} has the wrong shape {bd.shape}")
        s[d], B[d] = bd.ncols, bd

    # variable numbering: divisors ascending, then (i <= j) row-major
    offsets: dict[int, int] = {}
    nvars = 0
    for d in divs:
        offsets[d] = nvars
        nvars += s[d] * (s[d] + 1) // 2

    # one linear form (bitmask over the variables) per entry p <= q
    entry_index = {pq: e for e, pq in enumerate(_pairs(k))}
    forms = [0] * len(entry_index)
    for d in divs:
        sd = s[d]
        if sd == 0:
            continue
        m = B[d]
        for _ in range(d):
            cols = [m.column(i) for i in range(sd)]
            for var, (i, j) in enumerate(_pairs(sd), start=offsets[d]):
                u, v = cols[i], cols[j]
                for (p, q), e in entry_index.items():
                    up, uq = (u >> p) & 1, (u >> q) & 1
                    if i == j:
                        coeff = up & uq
                    else:
                        vp, vq = (v >> p) & 1, (v >> q) & 1
                        coeff = (up & vq) ^ (vp & uq)
                    if coeff:
                        forms[e] ^= 1 << var
            m = mul(a, m)

    basis_rows = row_basis(forms, nvars)
    L = len(basis_rows)
    C: dict[tuple[int, int], GF2Matrix] = {}
    for l, row in enumerate(basis_rows, start=1):
        for d in divs:
            sd = s[d]
            packed = [0] * sd
            for var, (i, j) in enumerate(_pairs(sd), start=offsets[d]):
                if (row >> var) & 1:
                    packed[i] |= 1 << j
            C[(l, d)] = GF2Matrix(sd, sd, tuple(packed))
    return FixContext(k, t, tuple(divs), s, B, L, C)


def build_profile(ctx: FixContext) -> TypeProfile:
    """Group the 2^L combinations of the constraint forms by their tuple of
    per-divisor types."""
    if ctx.L > MAX_CONSTRAINTS:
        raise ValueError(f"L = {ctx.L} exceeds the limit {MAX_CONSTRAINTS}")
    divs = ctx.divisors
    current = {d: [0] * ctx.s[d] for d in divs}
    memo: dict[tuple[int, tuple[int, ...]], QType] = {}

    def types() -> tuple[QType, ...]:
        out = []
        for d in divs:
            key = (d, tuple(current[d]))
            typ = memo.get(key)
            if typ is None:
                typ = memo[key] = classify_rows(current[d], ctx.s[d])
            out.append(typ)
        return tuple(out)

    counts: Counter = Counter()
    counts[types()] += 1
    # Gray code walk: step g flips constraint number (lowest set bit of g)
    for g in range(1, 1 << ctx.L):
        l = nu2(g) + 1
        for d in divs:
            rows = current[d]
            crow = ctx.C[(l, d)].rows
            for i in range(ctx.s[d]):
                rows[i] ^= crow[i]
        counts[types()] += 1
    entries = tuple(sorted(counts.items()))
    return TypeProfile(divs, entries)


def alpha_vector(ctx: FixContext, lam: Partition) -> dict[int, int]:
    """alpha_d: the parts i with nu(i) <= nu(t) and gcd(i, t) = d."""
    alpha = {d: 0 for d in ctx.divisors}
    nt = ctx.nu_t
    for i, m in lam.items():
        if nu2(i) <= nt:
            alpha[math.gcd(i, ctx.t)] += m
    return alpha


def free_exponent(ctx: FixContext, lam: Partition) -> int:
    """Dimension contributed by the cycles that XX^T = 0 does not constrain."""
    nt = ctx.nu_t
    return sum(ctx.s[math.gcd(i, ctx.t)] * m for i, m in lam.items() if nu2(i) > nt)


def n_of_A(ctx: FixContext, profile: TypeProfile, alpha: Mapping[int, int]) -> int:
    theta = sum(ctx.s[d] * alpha[d] for d in ctx.divisors)
    total = 0
    for tup, mult in profile.entries:
        typ = ZERO_TYPE
        for d, td in zip(ctx.divisors, tup):
            typ = boxplus(typ, scalar(alpha[d], td))
        total += mult * zero_count(typ)
    if ctx.L == 0:
        return 2 * total - (1 << theta)
    scale = 1 << (ctx.L - 1)
    if total % scale:
        raise ArithmeticError("character sum not divisible by 2^(L-1)")
    value = total // scale - (1 << theta)
    if value < 0:
        raise ArithmeticError("negative solution count")
    return value


def fix_count(ctx: FixContext, profile: TypeProfile, lam: Partition) -> int:
    return n_of_A(ctx, profile, alpha_vector(ctx, lam)) << free_exponent(ctx, lam)


@dataclass
class FixEvaluator:
    """Context and profile of one matrix, with ``n(A)`` memoized by alpha."""

    ctx: FixContext
    profile: TypeProfile
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def of(cls, a: GF2Matrix) -> "FixEvaluator":
        ctx = build_context(a)
        return cls(ctx, build_profile(ctx))

    def n_of_A(self, alpha: tuple[int, ...]) -> int:
        val = self._cache.get(alpha)
        if val is None:
            val = self._cache[alpha] = n_of_A(self.ctx, self.profile, dict(zip(self.ctx.divisors, alpha)))
        return val

    def fix_count(self, lam: Partition) -> int:
        alpha = alpha_vector(self.ctx, lam)
        return self.n_of_A(tuple(alpha[d] for d in self.ctx.divisors)) << free_exponent(self.ctx, lam)

    def part_weights(self, n: int) -> np.ndarray:
        """Linear map from multiplicity vectors of length n to
        (alpha_d for each divisor..., free exponent)."""
        ctx = self.ctx
        col = {d: c for c, d in enumerate(ctx.divisors)}
        w = np.zeros((max(n, 1), len(ctx.divisors) + 1), dtype=np.int64)
        for i in range(1, n + 1):
            g = math.gcd(i, ctx.t)
            if nu2(i) <= ctx.nu_t:
                w[i - 1, col[g]] = 1
            else:
                w[i - 1, -1] = ctx.s[g]
        return w

    def weighted_sum(self, mult: np.ndarray, weights: np.ndarray) -> int:
        """sum over rows of weights[row] * |Fix(A, P_row)| for a block of
        partitions given as multiplicity rows."""
        if len(mult) == 0:
            return 0
        feats = mult @ self.part_weights(mult.shape[1])
        uniq, inverse = np.unique(feats, axis=0, return_inverse=True)
        values = np.empty(len(uniq), dtype=object)
        for g, row in enumerate(uniq.tolist()):
            values[g] = self.n_of_A(tuple(row[:-1])) << row[-1]
        return int(weights.dot(values[np.asarray(inverse).reshape(-1)]))


def permutation_matrix(lam: Partition) -> GF2Matrix:
    """Block-diagonal P_lambda: each i-cycle is the i x i cyclic shift with
    ones on the superdiagonal and in the bottom-left corner."""
    blocks = []
    for i, m in sorted(lam.items()):
        shift = GF2Matrix(i, i, tuple((1 << ((r + 1) % i)) for r in range(i)))
        blocks.extend([shift] * m)
    return direct_sum(*blocks)


def fix_count_bruteforce(a: GF2Matrix, lam: Partition) -> int:
    """Solve AX = XP_lambda by linear algebra, then enumerate the solution
    space and count the X with XX^T = 0."""
    k, n = a.nrows, lam.n
    p = permutation_matrix(lam)
    nvars = k * n
    # column (r*n + c) of the map is the image of the unit matrix E_rc
    acol = [a.column(r) for r in range(k)]
    images = []
    for r in range(k):
        for c in range(n):
            img = 0
            # A E_rc: column c holds column r of A
            for pr in range(k):
                if (acol[r] >> pr) & 1:
                    img ^= 1 << (pr * n + c)
            # E_rc P: row r holds row c of P
            prow = p.rows[c]
            img ^= prow << (r * n)
            images.append(img)
    # images are columns; build the row-packed nvars x nvars map
    lin_rows = []
    for e in range(nvars):
        v = 0
        for var, img in enumerate(images):
            if (img >> e) & 1:
                v |= 1 << var
        lin_rows.append(v)
    kern = kernel_basis(GF2Matrix(nvars, nvars, tuple(lin_rows)))
    dim = kern.ncols
    if dim > MAX_BRUTE_DIM:
        raise ValueError(f"solution space of dimension {dim} is too large to enumerate")
    basis_vecs = [kern.column(j) for j in range(dim)]
    mask = (1 << n) - 1

    def rows_of(x: int) -> list[int]:
        return [(x >> (r * n)) & mask for r in range(k)]

    count = 0
    x = 0
    for g in range(1 << dim):
        if g:
            x ^= basis_vecs[nu2(g)]
        rows = rows_of(x)
        if all(bin(rows[i] & rows[j]).count("1") % 2 == 0 for i in range(k) for j in range(i, k)):
            count += 1
    return count


def type_of_block(ctx: FixContext, coeffs: Mapping[int, int], alpha: Mapping[int, int]) -> QType:
    """Type of the big block matrix for one sign vector, computed directly
    from ``(sum_l a_l C_l^(d)) (x) I_alpha_d`` (slow path, for checks)."""
    blocks = []
    for d in ctx.divisors:
        sd = ctx.s[d]
        acc = GF2Matrix.zeros(sd, sd)
        for l in range(1, ctx.L + 1):
            if coeffs.get(l):
                acc = add(acc, ctx.C[(l, d)])
        blocks.append(kron_identity(acc, alpha[d]))
    big = direct_sum(*blocks)
    return classify_rows(big.rows, big.nrows)


__all__ = [
    "FixContext",
    "FixEvaluator",
    "TypeProfile",
    "alpha_vector",
    "build_context",
    "build_profile",
    "divisors",
    "fix_count",
    "fix_count_bruteforce",
    "free_exponent",
    "n_of_A",
    "nu2",
    "permutation_matrix",
    "type_of_block",
]
