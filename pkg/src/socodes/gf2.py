"""Bit-packed linear algebra over GF(2).

Each matrix row is a Python int; bit ``j`` holds column ``j``.  Matrices
with zero rows or zero columns are ordinary values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class GF2Matrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise ShapeError("negative dimension")
        if len(self.rows) != self.nrows:
            raise ShapeError(f"expected {self.nrows} rows, got {len(self.rows)}")
        mask = (1 << self.ncols) - 1
        for r in self.rows:
            if r < 0 or r & ~mask:
                raise ShapeError("row has bits beyond ncols")

    # constructors

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "GF2Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = []
        for r in rows:
            if len(r) != ncols:
                raise ShapeError("ragged rows")
            v = 0
            for j, b in enumerate(r):
                if b & 1:
                    v |= 1 << j
            packed.append(v)
        return cls(len(packed), ncols, tuple(packed))

    @classmethod
    def from_ints(cls, rows: Iterable[int], ncols: int) -> "GF2Matrix":
        rows = tuple(rows)
        return cls(len(rows), ncols, rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "GF2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    # element access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def column(self, j: int) -> int:
        """Column ``j`` packed as an int (bit ``i`` = row ``i``)."""
        v = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                v |= 1 << i
        return v

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __str__(self) -> str:
        if not self.nrows:
            return f"<{self.nrows}x{self.ncols} empty>"
        return "\n".join("".join(".1"[b] for b in row) for row in self.to_lists())

    # arithmetic

    def __add__(self, other: "GF2Matrix") -> "GF2Matrix":
        return add(self, other)

    __sub__ = __add__

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        return mul(self, other)

    @property
    def T(self) -> "GF2Matrix":
        return transpose(self)


def add(a: GF2Matrix, b: GF2Matrix) -> GF2Matrix:
    if a.shape != b.shape:
        raise ShapeError(f"cannot add {a.shape} and {b.shape}")
    return GF2Matrix(a.nrows, a.ncols, tuple(x ^ y for x, y in zip(a.rows, b.rows)))


def mul_rows(arows: Sequence[int], brows: Sequence[int]) -> list[int]:
    """Row-packed product: row i of the result is the XOR of the rows of b
    selected by the bits of a's row i."""
    out = []
    for r in arows:
        acc = 0
        j = 0
        while r:
            if r & 1:
                acc ^= brows[j]
            r >>= 1
            j += 1
        out.append(acc)
    return out


def mul(a: GF2Matrix, b: GF2Matrix) -> GF2Matrix:
    if a.ncols != b.nrows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return GF2Matrix(a.nrows, b.ncols, tuple(mul_rows(a.rows, b.rows)))


def transpose(a: GF2Matrix) -> GF2Matrix:
    return GF2Matrix(a.ncols, a.nrows, tuple(a.column(j) for j in range(a.ncols)))


def direct_sum(*blocks: GF2Matrix) -> GF2Matrix:
    """Block-diagonal matrix ``blocks[0] (+) blocks[1] (+) ...``."""
    rows: list[int] = []
    shift = 0
    for blk in blocks:
        rows.extend(r << shift for r in blk.rows)
        shift += blk.ncols
    return GF2Matrix(len(rows), shift, tuple(rows))


def kron_identity(a: GF2Matrix, m: int) -> GF2Matrix:
    """``a (x) I_m``, the ``(i,j)`` entry of ``a`` blown up to ``a_ij I_m``."""
    rows = []
    for r in a.rows:
        for p in range(m):
            v = 0
            for j in range(a.ncols):
                if (r >> j) & 1:
                    v |= 1 << (j * m + p)
            rows.append(v)
    return GF2Matrix(a.nrows * m, a.ncols * m, tuple(rows))


def matrix_pow(a: GF2Matrix, e: int) -> GF2Matrix:
    if not a.is_square():
        raise ShapeError("power of a non-square matrix")
    if e < 0:
        raise ValueError("negative exponent")
    result = GF2Matrix.identity(a.nrows)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def _echelon(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    work = list(rows)
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        bit = 1 << col
        piv = next((i for i in range(rank, len(work)) if work[i] & bit), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        for i in range(len(work)):
            if i != rank and work[i] & bit:
                work[i] ^= prow
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def rref(a: GF2Matrix) -> tuple[GF2Matrix, list[int]]:
    rows, pivots = _echelon(a.rows, a.ncols)
    return GF2Matrix(len(rows), a.ncols, tuple(rows)), pivots


def row_basis(rows: Sequence[int], ncols: int) -> list[int]:
    """An independent (RREF) basis of the span of packed ``rows``."""
    return _echelon(rows, ncols)[0]


def rank(a: GF2Matrix) -> int:
    return len(_echelon(a.rows, a.ncols)[1])


def kernel_basis(a: GF2Matrix) -> GF2Matrix:
    """Columns form a basis of ``{x : a x = 0}``; pivot-ordered.

    Shape is ``a.ncols x (a.ncols - rank(a))``.
    """
    red, pivots = _echelon(a.rows, a.ncols)
    pivset = set(pivots)
    free = [j for j in range(a.ncols) if j not in pivset]
    vecs = []
    for f in free:
        v = 1 << f
        for row, p in zip(red, pivots):
            if (row >> f) & 1:
                v |= 1 << p
        vecs.append(v)
    # vecs are columns; build the row-packed n x s matrix
    n, s = a.ncols, len(vecs)
    out = []
    for i in range(n):
        r = 0
        for j, v in enumerate(vecs):
            if (v >> i) & 1:
                r |= 1 << j
        out.append(r)
    return GF2Matrix(n, s, tuple(out))


def column_span(a: GF2Matrix) -> frozenset[int]:
    """The full column space as a set of packed vectors (small matrices only)."""
    cols = [a.column(j) for j in range(a.ncols)]
    span = {0}
    for c in cols:
        span |= {v ^ c for v in span}
    return frozenset(span)


def multiplicative_order(a: GF2Matrix) -> int:
    if not a.is_square():
        raise ShapeError("order of a non-square matrix")
    k = a.nrows
    if rank(a) != k:
        raise ValueError("matrix is singular")
    ident = GF2Matrix.identity(k)
    cap = max(1, (1 << k) * k)
    p = a
    for t in range(1, cap + 1):
        if p == ident:
            return t
        p = mul(p, a)
    raise RuntimeError(f"no order found below cap {cap}")


# polynomials over GF(2), packed as ints: bit i is the coefficient of x^i


@dataclass(frozen=True, order=True)
class GF2Poly:
    bits: int

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("negative bit pattern")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "GF2Poly":
        """Coefficients lowest degree first."""
        return cls(sum((c & 1) << i for i, c in enumerate(coeffs)))

    @property
    def degree(self) -> int:
        return self.bits.bit_length() - 1

    def coeffs(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.degree + 1)]

    def __mul__(self, other: "GF2Poly") -> "GF2Poly":
        return GF2Poly(poly_mul(self.bits, other.bits))

    def __mod__(self, other: "GF2Poly") -> "GF2Poly":
        return GF2Poly(poly_mod(self.bits, other.bits))

    def __call__(self, a: GF2Matrix) -> GF2Matrix:
        """Evaluate at a square matrix (Horner)."""
        n = a.nrows
        acc = GF2Matrix.zeros(n, n)
        ident = GF2Matrix.identity(n)
        for c in reversed(self.coeffs()):
            acc = mul(acc, a)
            if c:
                acc = add(acc, ident)
        return acc

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            if (self.bits >> i) & 1:
                terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
        return "+".join(terms)


def poly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("polynomial modulo zero")
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def poly_pow(f: GF2Poly, i: int) -> GF2Poly:
    out = 1
    for _ in range(i):
        out = poly_mul(out, f.bits)
    return GF2Poly(out)


def reciprocal(f: GF2Poly) -> GF2Poly:
    """x^deg(f) f(1/x)."""
    if not f.bits & 1:
        raise ValueError(f"reciprocal needs f(0) = 1, got {f}")
    d = f.degree
    return GF2Poly(sum(((f.bits >> i) & 1) << (d - i) for i in range(d + 1)))


def companion(f: GF2Poly) -> GF2Matrix:
    """Companion matrix with ones on the superdiagonal and the low-order
    coefficients of ``f`` along the last row."""
    d = f.degree
    if d < 1:
        raise ValueError("companion matrix needs degree >= 1")
    rows = [1 << (i + 1) for i in range(d - 1)]
    rows.append(f.bits & ((1 << d) - 1))
    return GF2Matrix(d, d, tuple(rows))
