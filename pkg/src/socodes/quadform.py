"""Binary quadratic forms: Dickson types, type arithmetic and zero counts.

A square matrix ``m`` stands for the form ``q(x) = x m x^T``; only
``m + m^T`` and the diagonal matter.  The type of ``q`` is the tuple
``(n, r, u, v)``: dimension, number of hyperbolic planes, Arf bit and
defect bit (``v = 1`` when ``q`` is nonzero on the radical of its polar
form).
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from .gf2 import GF2Matrix, ShapeError


class QType(NamedTuple):
    n: int
    r: int
    u: int
    v: int

    def validate(self) -> "QType":
        n, r, u, v = self
        if n < 0 or r < 0 or 2 * r > n:
            raise ValueError(f"invalid type {tuple(self)}: need 0 <= 2r <= n")
        if (u, v) not in ((0, 0), (1, 0), (0, 1)):
            raise ValueError(f"invalid type {tuple(self)}: (u, v) must be (0,0), (1,0) or (0,1)")
        if u and r < 1:
            raise ValueError(f"invalid type {tuple(self)}: u = 1 needs r >= 1")
        if v and 2 * r > n - 1:
            raise ValueError(f"invalid type {tuple(self)}: v = 1 needs 2r <= n - 1")
        return self


ZERO_TYPE = QType(0, 0, 0, 0)


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def classify_rows(rows: Sequence[int], n: int) -> QType:
    """Type of the form whose (row-packed) n x n matrix is ``rows``.

    Symplectic reduction of the polar form ``B = m + m^T``: peel off
    hyperbolic pairs ``(x, y)`` with ``B(x, y) = 1``, accumulating
    ``q(x) q(y)`` into the Arf bit; what is left spans the radical.
    """
    # polar form rows and the linear (diagonal) part
    polar = list(rows)
    for i, ri in enumerate(rows):
        for j in range(n):
            if (ri >> j) & 1:
                polar[j] ^= 1 << i
    diag = 0
    for i, ri in enumerate(rows):
        diag |= ri & (1 << i)

    def q(x: int) -> int:
        # x m x^T = sum_{i<j} B_ij x_i x_j + sum_i m_ii x_i
        acc = _parity(x & diag)
        y = x
        i = 0
        while y:
            if y & 1:
                # upper half of the polar form only
                acc ^= _parity(polar[i] & x & ~((2 << i) - 1))
            y >>= 1
            i += 1
        return acc

    def b(x: int, y: int) -> int:
        acc = 0
        i = 0
        while x:
            if x & 1:
                acc ^= _parity(polar[i] & y)
            x >>= 1
            i += 1
        return acc

    vecs = [1 << i for i in range(n)]
    r = 0
    arf = 0
    defect = 0
    while vecs:
        x = vecs.pop()
        partner = next((idx for idx, y in enumerate(vecs) if b(x, y)), None)
        if partner is None:
            # orthogonal to everything left, hence in the radical
            defect |= q(x)
            continue
        y = vecs.pop(partner)
        r += 1
        arf ^= q(x) & q(y)
        projected = []
        for z in vecs:
            if b(z, y):
                z ^= x
            if b(z, x):
                z ^= y
            projected.append(z)
        vecs = projected
    if defect:
        return QType(n, r, 0, 1)
    return QType(n, r, arf, 0)


def classify(m: GF2Matrix) -> QType:
    if not m.is_square():
        raise ShapeError(f"quadratic form needs a square matrix, got {m.shape}")
    return classify_rows(m.rows, m.nrows)


def boxplus(t1: QType, t2: QType) -> QType:
    """Type of the orthogonal sum of two forms.

    A defective sum has no Arf invariant, so u is reported as 0 there.
    """
    v = 1 if t1.v + t2.v > 0 else 0
    return QType(t1.n + t2.n, t1.r + t2.r, 0 if v else (t1.u + t2.u) & 1, v)


def scalar(m: int, t: QType) -> QType:
    """Type of the orthogonal sum of ``m`` copies of a form of type ``t``."""
    if m < 0:
        raise ValueError("negative multiplicity")
    return QType(m * t.n, m * t.r, (m * t.u) & 1, t.v if m > 0 else 0)


def zero_count(t: QType) -> int:
    """Number of zeros of a form of type ``t`` in GF(2)^n."""
    n, r, u, v = t
    if n == 0:
        return 1
    if v:
        return 1 << (n - 1)
    half = 1 << (n - 1 - r)
    return (1 << (n - 1)) + (-half if u else half)


def _qbinom_part(n: int, r: int) -> Fraction:
    num = 1
    for i in range(1, 2 * r + 1):
        num *= (1 << (n - 2 * r + i)) - 1
    den = 1
    for i in range(1, r + 1):
        den *= (1 << (2 * i)) - 1
    return Fraction(num, den)


def count_types(n: int, r: int, u: int, v: int) -> int:
    """Number of quadratic forms in n variables of type ``(n, r, u, v)``."""
    QType(n, r, u, v).validate()
    if v:
        num = 1
        for i in range(0, 2 * r + 1):
            num *= (1 << (n - 2 * r + i)) - 1
        den = 1
        for i in range(1, r + 1):
            den *= (1 << (2 * i)) - 1
        val = Fraction(2 ** (r * (r + 1)) * num, den)
    else:
        sign = 1 if u == 0 else -1
        val = Fraction(2 ** (r * r), 2) * (2**r + sign) * _qbinom_part(n, r)
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral form count for {(n, r, u, v)}")
    return int(val)


def all_types(n: int) -> list[QType]:
    """Every valid type of dimension n, in a fixed order."""
    out = []
    for r in range(n // 2 + 1):
        out.append(QType(n, r, 0, 0))
        if r >= 1:
            out.append(QType(n, r, 1, 0))
        if 2 * r <= n - 1:
            out.append(QType(n, r, 0, 1))
    return out
