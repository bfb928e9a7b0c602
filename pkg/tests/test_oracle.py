import itertools
import random

import pytest

from socodes.census import phi, psi_le
from socodes.oracle import (
    Code,
    canonical_form,
    enumerate_so_codes,
    fixed_column_multisets,
    psi_le_bruteforce,
    psi_le_columns,
)
from socodes.glclasses import enumerate_classes


def test_length_two():
    codes = enumerate_so_codes(2, 1)
    assert [c.words for c in codes] == [(0,), (0, 3)]


@pytest.mark.parametrize("n", range(1, 9))
def test_code_counts_match_phi(n):
    codes = enumerate_so_codes(n, n // 2)
    for c in codes:
        c.check()
    for k in range(0, n // 2 + 1):
        assert sum(1 for c in codes if c.dim == k) == phi(n, k)
    assert len({c.words for c in codes}) == len(codes)


def test_guards():
    with pytest.raises(ValueError):
        enumerate_so_codes(11, 2)
    with pytest.raises(ValueError):
        enumerate_so_codes(6, 4)
    with pytest.raises(ValueError):
        canonical_form(Code.span(9, [0b11]))
    with pytest.raises(ValueError):
        psi_le_bruteforce(2, 9)


def test_check_rejects_bad_codes():
    with pytest.raises(ValueError):
        Code(3, (0, 1)).check()  # odd weight word
    with pytest.raises(ValueError):
        Code(4, (0, 3, 6)).check()  # not closed


def test_canonical_form_is_permutation_invariant():
    rng = random.Random(9)
    for n in range(2, 9):
        codes = enumerate_so_codes(n, min(2, n // 2))
        for c in rng.sample(codes, min(15, len(codes))):
            perm = list(range(n))
            rng.shuffle(perm)
            assert canonical_form(c.permuted(perm)) == canonical_form(c)


def test_canonical_form_separates():
    a = Code.span(4, [0b0011])
    b = Code.span(4, [0b1111])
    c = Code.span(4, [0b0110])
    assert canonical_form(a) == canonical_form(c)
    assert canonical_form(a) != canonical_form(b)
    assert canonical_form(Code.span(2, [0b11])) == "00,11"


def test_reference_values():
    assert psi_le_bruteforce(2, 4) == 4
    assert psi_le_bruteforce(2, 6) == 7
    assert psi_le_bruteforce(3, 8) == 16
    assert psi_le_bruteforce(4, 8) == 18


@pytest.mark.parametrize("n", range(1, 9))
def test_bruteforce_matches_engine(n):
    for k in range(0, 6):
        assert psi_le_bruteforce(k, n) == psi_le(k, n).psi_le


def test_column_fixed_points_of_identity():
    # with A = I every multiset counts; the Gram condition keeps those
    # whose odd-multiplicity vectors give a zero sum of v v^T
    k, n = 2, 3
    ident = enumerate_classes(k)[0].rep
    count = 0
    for ms in itertools.combinations_with_replacement(range(1 << k), n):
        odd = [v for v in set(ms) if ms.count(v) % 2]
        gram = [[sum((v >> i) & (v >> j) & 1 for v in odd) % 2 for j in range(k)] for i in range(k)]
        count += not any(any(r) for r in gram)
    assert fixed_column_multisets(ident.rows, k, n) == count


def test_column_route_small():
    assert psi_le_columns(3, 12) == 49
    assert psi_le_columns(5, 10) == 39
    assert psi_le_columns(0, 5) == 1
