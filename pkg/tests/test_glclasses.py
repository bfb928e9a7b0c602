import random
from collections import Counter

import pytest

from socodes.gf2 import GF2Matrix, GF2Poly, matrix_pow, multiplicative_order, rank
from socodes.glclasses import (
    EDProfile,
    brute_centralizer_order,
    centralizer_order,
    conjugate,
    enumerate_classes,
    find_class,
    gl_elements,
    gl_order,
    inverse,
    irreducible_polys,
    random_invertible,
)

from conftest import mat, parse_poly

X1 = "x+1"

# (elementary divisors, centralizer order) per representative, k = 3, 4, 5
TABLES = {
    3: [
        ([X1, X1, X1], 2**3 * 3 * 7),
        ([X1, "(x+1)^2"], 2**3),
        (["(x+1)^3"], 2**2),
        ([X1, "x^2+x+1"], 3),
        (["x^3+x+1"], 7),
        (["x^3+x^2+1"], 7),
    ],
    4: [
        ([X1] * 4, 2**6 * 3**2 * 5 * 7),
        ([X1, X1, "(x+1)^2"], 2**6 * 3),
        ([X1, "(x+1)^3"], 2**4),
        ([X1, X1, "x^2+x+1"], 2 * 3**2),
        ([X1, "x^3+x+1"], 7),
        ([X1, "x^3+x^2+1"], 7),
        (["(x+1)^2", "(x+1)^2"], 2**5 * 3),
        (["(x+1)^2", "x^2+x+1"], 2 * 3),
        (["x^2+x+1", "x^2+x+1"], 2**2 * 3**2 * 5),
        (["(x+1)^4"], 2**3),
        (["(x^2+x+1)^2"], 2**2 * 3),
        (["x^4+x^3+x^2+x+1"], 3 * 5),
        (["x^4+x+1"], 3 * 5),
        (["x^4+x^3+1"], 3 * 5),
    ],
    5: [
        ([X1] * 5, 2**10 * 3**2 * 5 * 7 * 31),
        ([X1, X1, X1, "(x+1)^2"], 2**10 * 3 * 7),
        ([X1, X1, "(x+1)^3"], 2**7 * 3),
        ([X1, X1, X1, "x^2+x+1"], 2**3 * 3**2 * 7),
        ([X1, X1, "x^3+x+1"], 2 * 3 * 7),
        ([X1, X1, "x^3+x^2+1"], 2 * 3 * 7),
        ([X1, "(x+1)^2", "(x+1)^2"], 2**9 * 3),
        ([X1, "(x+1)^2", "x^2+x+1"], 2**3 * 3),
        ([X1, "x^2+x+1", "x^2+x+1"], 2**2 * 3**2 * 5),
        ([X1, "(x+1)^4"], 2**5),
        ([X1, "(x^2+x+1)^2"], 2**2 * 3),
        ([X1, "x^4+x^3+x^2+x+1"], 3 * 5),
        ([X1, "x^4+x+1"], 3 * 5),
        ([X1, "x^4+x^3+1"], 3 * 5),
        (["(x+1)^2", "(x+1)^3"], 2**7),
        (["(x+1)^2", "x^3+x+1"], 2 * 7),
        (["(x+1)^2", "x^3+x^2+1"], 2 * 7),
        (["x^2+x+1", "(x+1)^3"], 2**2 * 3),
        (["x^2+x+1", "x^3+x+1"], 3 * 7),
        (["x^2+x+1", "x^3+x^2+1"], 3 * 7),
        (["(x+1)^5"], 2**4),
        (["x^5+x^2+1"], 31),
        (["x^5+x^3+1"], 31),
        (["x^5+x^3+x^2+x+1"], 31),
        (["x^5+x^4+x^2+x+1"], 31),
        (["x^5+x^4+x^3+x+1"], 31),
        (["x^5+x^4+x^3+x^2+1"], 31),
    ],
}


def divisor_key(divs) -> tuple:
    return tuple(sorted(p.bits for p in divs))


@pytest.mark.parametrize("k", [3, 4, 5])
def test_classes_match_reference_tables(k):
    ours = Counter((divisor_key(c.profile.divisors()), c.cent_order) for c in enumerate_classes(k))
    ref = Counter((divisor_key(parse_poly(d) for d in divs), cent) for divs, cent in TABLES[k])
    assert ours == ref


def test_class_counts():
    # GL(2,2) is S_3, which has three classes
    assert [len(enumerate_classes(k)) for k in range(1, 6)] == [1, 3, 6, 14, 27]
    assert len(enumerate_classes(0)) == 1


@pytest.mark.parametrize("k", range(1, 6))
def test_class_equation(k):
    assert sum(gl_order(k) // c.cent_order for c in enumerate_classes(k)) == gl_order(k)
    for c in enumerate_classes(k):
        assert gl_order(k) % c.cent_order == 0


@pytest.mark.parametrize("k", range(1, 5))
def test_centralizer_formula_vs_brute_force(k):
    for c in enumerate_classes(k):
        assert brute_centralizer_order(c.rep) == c.cent_order, c.label


def test_brute_centralizer_guard():
    with pytest.raises(ValueError):
        brute_centralizer_order(GF2Matrix.identity(5))


@pytest.mark.parametrize("k", range(1, 6))
def test_representatives(k):
    ident = GF2Matrix.identity(k)
    for c in enumerate_classes(k):
        assert rank(c.rep) == k
        assert multiplicative_order(c.rep) == c.t
        assert matrix_pow(c.rep, c.t) == ident
        assert all(matrix_pow(c.rep, c.t // p) != ident for p in (2, 3, 5, 7, 31) if c.t % p == 0)
        # the product of the elementary divisors annihilates the rep
        char = GF2Poly(1)
        for f in c.profile.divisors():
            char = char * f
        assert char.degree == k and char(c.rep).is_zero()


def test_known_orders():
    assert find_class(3, "k3:(x+1)^3").t == 4
    assert find_class(4, "k4:(x^2+x+1)^2").t == 6
    assert find_class(1, "1").t == 1


def test_labels_unique_and_addressable():
    for k in range(1, 6):
        labels = [c.label for c in enumerate_classes(k)]
        assert len(set(labels)) == len(labels)
        for i, lab in enumerate(labels, start=1):
            assert find_class(k, lab) is enumerate_classes(k)[i - 1]
            assert find_class(k, str(i)) is enumerate_classes(k)[i - 1]
    with pytest.raises(KeyError):
        find_class(3, "nope")


def test_centralizer_examples():
    p = parse_poly
    assert centralizer_order(EDProfile.of([(p("x+1"), 1, 3)])) == 168
    assert centralizer_order(EDProfile.of([(p("x+1"), 1, 1), (p("x+1"), 2, 1)])) == 8
    assert centralizer_order(EDProfile.of([(p("x^2+x+1"), 2, 1)])) == 12


def test_centralizer_of_table_examples():
    a4 = mat("100", "001", "011")  # [1] (+) companion(x^2+x+1)
    assert brute_centralizer_order(a4) == 3
    a9 = GF2Matrix.from_rows([[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 1]])
    assert brute_centralizer_order(a9) == 180
    assert brute_centralizer_order(GF2Matrix.identity(2)) == 6


def test_irreducibles():
    assert [str(f) for f in irreducible_polys(1)] == ["x+1"]
    assert [str(f) for f in irreducible_polys(2)] == ["x+1", "x^2+x+1"]
    assert sum(1 for f in irreducible_polys(5) if f.degree == 5) == 6


def test_gl_order():
    assert [gl_order(k) for k in range(1, 6)] == [1, 6, 168, 20160, 9999360]
    assert sum(1 for _ in gl_elements(3)) == 168


def test_profile_validation():
    with pytest.raises(ValueError):
        EDProfile.of([(GF2Poly(0b10), 1, 1)])  # x itself
    with pytest.raises(ValueError):
        EDProfile.of([(GF2Poly(0b11), 0, 1)])


def test_conjugate_and_inverse():
    rng = random.Random(5)
    for _ in range(30):
        g = random_invertible(4, rng)
        assert inverse(g) @ g == GF2Matrix.identity(4)
        a = enumerate_classes(4)[rng.randrange(14)].rep
        b = conjugate(a, g)
        assert multiplicative_order(b) == multiplicative_order(a)
