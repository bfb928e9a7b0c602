import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socodes.gf2 import (
    GF2Matrix,
    GF2Poly,
    ShapeError,
    add,
    column_span,
    companion,
    direct_sum,
    kernel_basis,
    kron_identity,
    matrix_pow,
    mul,
    multiplicative_order,
    poly_mod,
    poly_pow,
    rank,
    reciprocal,
    rref,
    transpose,
)
from socodes.glclasses import irreducible_polys

from conftest import mat


@st.composite
def matrices(draw, max_dim=6, nrows=None, ncols=None):
    r = draw(st.integers(0, max_dim)) if nrows is None else nrows
    c = draw(st.integers(0, max_dim)) if ncols is None else ncols
    rows = tuple(draw(st.integers(0, (1 << c) - 1)) for _ in range(r))
    return GF2Matrix(r, c, rows)


def test_padding_is_rejected():
    with pytest.raises(ShapeError):
        GF2Matrix(1, 2, (0b100,))
    with pytest.raises(ShapeError):
        GF2Matrix(2, 2, (1,))


def test_empty_shapes_are_values():
    e = GF2Matrix.zeros(3, 0)
    assert e.shape == (3, 0) and e.is_zero()
    assert mul(GF2Matrix.zeros(2, 3), e).shape == (2, 0)
    assert rank(GF2Matrix.zeros(0, 0)) == 0
    assert kernel_basis(GF2Matrix.zeros(0, 4)) == GF2Matrix.identity(4)


def test_small_products():
    m = mat("101", "011", "110")
    assert mul(GF2Matrix.identity(3), m) == m
    swap = mat("01", "10")
    assert mul(swap, swap) == GF2Matrix.identity(2)
    assert matrix_pow(mat("01", "11"), 3) == GF2Matrix.identity(2)
    assert matrix_pow(m, 0) == GF2Matrix.identity(3)


def test_shape_errors():
    with pytest.raises(ShapeError):
        mul(GF2Matrix.zeros(2, 3), GF2Matrix.zeros(2, 3))
    with pytest.raises(ShapeError):
        add(GF2Matrix.zeros(2, 3), GF2Matrix.zeros(3, 2))
    with pytest.raises(ShapeError):
        matrix_pow(GF2Matrix.zeros(2, 3), 2)


def test_direct_sum_builds_table1_a2():
    a2 = direct_sum(mat("1"), mat("01", "10"))
    assert a2 == mat("100", "001", "010")
    assert rank(a2 + GF2Matrix.identity(3)) == 1


def test_rank_and_order_of_x_plus_1_cubed():
    a3 = companion(GF2Poly(0b1111))  # (x+1)^3
    assert rank(a3 + GF2Matrix.identity(3)) == 2
    assert matrix_pow(a3, 4) == GF2Matrix.identity(3)
    assert multiplicative_order(a3) == 4


def test_kernel_of_table1_a2_matches_reference_span():
    a2 = direct_sum(mat("1"), mat("01", "10"))
    b1 = kernel_basis(a2 + GF2Matrix.identity(3))
    reference = mat("10", "01", "01")  # [1] (+) [1 1]^T
    assert column_span(b1) == column_span(reference)


def test_kernel_special_cases():
    assert kernel_basis(GF2Matrix.zeros(3, 3)) == GF2Matrix.identity(3)
    assert kernel_basis(mat("01", "11")).shape == (2, 0)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_transpose_of_product(data):
    a = data.draw(matrices())
    b = data.draw(matrices(ncols=None, nrows=a.ncols))
    assert transpose(mul(a, b)) == mul(transpose(b), transpose(a))
    assert transpose(transpose(a)) == a


@settings(max_examples=300, deadline=None)
@given(matrices(max_dim=7))
def test_kernel_contract(a):
    kb = kernel_basis(a)
    assert mul(a, kb).is_zero()
    assert kb.ncols + rank(a) == a.ncols
    assert rank(kb) == kb.ncols


@settings(max_examples=100, deadline=None)
@given(matrices(max_dim=6))
def test_rref_is_idempotent(a):
    red, piv = rref(a)
    assert rref(red)[0] == red
    assert len(piv) == rank(a)


def test_rank_symmetric_exhaustive_up_to_4x4():
    for r, c in itertools.product(range(1, 5), repeat=2):
        for rows in itertools.product(range(1 << c), repeat=r):
            m = GF2Matrix(r, c, rows)
            assert rank(m) == rank(transpose(m))


def test_companion_examples():
    assert companion(GF2Poly(0b111)) == mat("01", "11")
    assert companion(GF2Poly(0b101)) == mat("01", "10")
    assert reciprocal(GF2Poly(0b1011)) == GF2Poly(0b1101)
    with pytest.raises(ValueError):
        reciprocal(GF2Poly(0b110))


def test_cayley_hamilton_for_all_monic_up_to_degree_5():
    for d in range(1, 6):
        for low in range(1 << d):
            f = GF2Poly((1 << d) | low)
            assert f(companion(f)).is_zero()


def test_order_matches_polynomial_period():
    for f in irreducible_polys(5):
        t = 1
        while poly_mod((1 << t) | 1, f.bits):
            t += 1
        assert multiplicative_order(companion(f)) == t


def test_order_rejects_singular():
    with pytest.raises(ValueError):
        multiplicative_order(mat("11", "11"))


def test_kron_identity_blocks():
    a = mat("11", "01")
    assert kron_identity(a, 1) == a
    assert kron_identity(a, 2) == mat("1010", "0101", "0010", "0001")
    assert kron_identity(a, 0).shape == (0, 0)


def test_poly_helpers():
    f = GF2Poly(0b111)
    assert str(f) == "x^2+x+1"
    assert poly_pow(GF2Poly(0b11), 2) == GF2Poly(0b101)
    assert GF2Poly.from_coeffs([1, 1, 0, 1]) == GF2Poly(0b1011)
    rng = random.Random(3)
    for _ in range(50):
        a, b = rng.randrange(1, 256), rng.randrange(1, 64)
        q = GF2Poly(a) % GF2Poly(b)
        assert q.bits.bit_length() < b.bit_length()
