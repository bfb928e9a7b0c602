import csv
import re
from collections import Counter
from functools import lru_cache
from pathlib import Path

import pytest

from socodes.gf2 import GF2Matrix, GF2Poly, poly_pow

DATA = Path(__file__).parent / "data"


def load_grid(name: str) -> dict[tuple[int, int], int]:
    """(k, n) -> value from a golden CSV with columns n,k0..k5."""
    out = {}
    with open(DATA / name, newline="") as fh:
        for row in csv.DictReader(fh):
            n = int(row["n"])
            for key, val in row.items():
                if key.startswith("k"):
                    out[(int(key[1:]), n)] = int(val)
    return out


@pytest.fixture(scope="session")
def golden_le():
    return load_grid("golden_psi_le.csv")


@pytest.fixture(scope="session")
def golden_psi():
    return load_grid("golden_psi.csv")


def parse_poly(text: str) -> GF2Poly:
    """'x^3+x+1' or '(x+1)^2' -> GF2Poly."""
    text = text.replace(" ", "")
    m = re.fullmatch(r"\((.*)\)\^(\d+)", text)
    if m:
        return poly_pow(parse_poly(m.group(1)), int(m.group(2)))
    bits = 0
    for term in text.split("+"):
        if term == "1":
            bits ^= 1
        elif term == "x":
            bits ^= 2
        else:
            bits ^= 1 << int(term[2:])
    return GF2Poly(bits)


def mat(*rows: str) -> GF2Matrix:
    """mat('01', '11') -> the 2x2 matrix with those rows."""
    return GF2Matrix.from_rows([[int(c) for c in r] for r in rows])


@lru_cache(maxsize=None)
def form_type_frequencies(n: int) -> dict:
    """Type -> number of n x n matrices of that type, by walking every
    upper-triangular matrix (each form has 2^(n(n-1)/2) matrices)."""
    from socodes.quadform import classify_rows

    freq: Counter = Counter()
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    for code in range(1 << len(pairs)):
        rows = [0] * n
        for e, (i, j) in enumerate(pairs):
            if (code >> e) & 1:
                rows[i] |= 1 << j
        freq[classify_rows(rows, n)] += 1 << (n * (n - 1) // 2)
    return dict(freq)
