import itertools
import math
import random
from fractions import Fraction

import pytest

from elemfun.lattice import IntMatrix, RankDeficientError, lll_reduce
from elemfun.relations import Basis


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def test_identity_already_reduced():
    m = IntMatrix.from_rows([[1, 0], [0, 1]])
    assert lll_reduce(m).to_rows() == [[0, 1], [1, 0]] or \
        lll_reduce(m).to_rows() == [[1, 0], [0, 1]]


def test_finds_short_vector():
    m = IntMatrix.from_rows([[1, 0, 1000], [0, 1, 1001]])
    rows = lll_reduce(m).to_rows()
    assert [1, -1, -1] in rows or [-1, 1, 1] in rows


def test_log_prime_matrix_short_last_entry():
    # scale-10 log matrix: some reduced row must have tiny last entry
    basis = Basis.log_primes(13)
    vals = basis.values(96)
    rows = []
    for j, v in enumerate(vals):
        col = int((2 * 10 * v.man + (1 << 96)) >> 97)
        row = [0] * 13 + [col]
        row[j] = 1
        rows.append(row)
    reduced = lll_reduce(IntMatrix.from_rows(rows)).to_rows()
    assert any(abs(r[-1]) <= 2 for r in reduced)


def test_rank_deficient_raises():
    with pytest.raises(RankDeficientError):
        lll_reduce(IntMatrix.from_rows([[1, 2], [2, 4]]))


def test_delta_domain():
    m = IntMatrix.from_rows([[1, 0], [0, 1]])
    for bad in (Fraction(1, 4), Fraction(1), 0, 2):
        with pytest.raises(ValueError):
            lll_reduce(m, bad)


def _brute_shortest(rows, box=5):
    best = None
    n = len(rows)
    for ks in itertools.product(range(-box, box + 1), repeat=n):
        if not any(ks):
            continue
        v = [sum(k * r[j] for k, r in zip(ks, rows))
             for j in range(len(rows[0]))]
        ln = _dot(v, v)
        if best is None or ln < best:
            best = ln
    return best


def test_first_row_within_lll_bound():
    rng = random.Random(11)
    for _ in range(10):
        rows = [[rng.randrange(-20, 21) for _ in range(4)] for _ in range(3)]
        try:
            red = lll_reduce(IntMatrix.from_rows(rows)).to_rows()
        except RankDeficientError:
            continue
        lam1 = _brute_shortest(rows)
        assert _dot(red[0], red[0]) <= (2 ** (len(rows) - 1)) * lam1


def test_idempotent():
    m = IntMatrix.from_rows([[12, 2, 17], [4, -9, 1], [1, 1, 52]])
    once = lll_reduce(m)
    twice = lll_reduce(once)
    assert _dot(twice.row(0), twice.row(0)) == _dot(once.row(0), once.row(0))


def _det3(rows):
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def test_unimodular_transform():
    rng = random.Random(5)
    for _ in range(10):
        rows = [[rng.randrange(-30, 31) for _ in range(3)] for _ in range(3)]
        try:
            red = lll_reduce(IntMatrix.from_rows(rows)).to_rows()
        except RankDeficientError:
            continue
        assert abs(_det3(red)) == abs(_det3(rows))


def test_sorted_by_length():
    m = IntMatrix.from_rows([[5, 0, 3], [1, 1, 0], [0, 7, 2]])
    rows = lll_reduce(m).to_rows()
    lens = [_dot(r, r) for r in rows]
    assert lens == sorted(lens)


def test_intmatrix_validation():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])
