"""
Exact-integer LLL reduction for small row lattices.

This targets the matrices arising in relation-table generation: dimension
up to ~65 with entries of a few hundred bits.  The implementation follows
the classic all-integer formulation (Cohen, "A Course in Computational
Algebraic Number Theory", alg. 2.6.3/2.6.7): Gram-Schmidt data is carried
as integers d[i], lambda[i][j], so no floating point is involved anywhere.
"""

from fractions import Fraction

__all__ = ["IntMatrix", "RankDeficientError", "lll_reduce"]


class RankDeficientError(ValueError):
    """Input rows are linearly dependent."""


class IntMatrix:
    """Immutable row-major integer matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = [int(e) for e in entries]
        if len(entries) != rows * cols:
            raise ValueError("entries length must equal rows*cols")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    @classmethod
    def from_rows(cls, row_list):
        rows = len(row_list)
        cols = len(row_list[0]) if rows else 0
        flat = []
        for r in row_list:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(rows, cols, flat)

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return "IntMatrix(%d, %d, %r)" % (self.rows, self.cols, self.entries)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(m, delta=Fraction(99, 100)):
    """LLL-reduce the rows of m; rows sorted by length, then lexicographically.

    Raises RankDeficientError when the rows are linearly dependent.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    num, den = delta.numerator, delta.denominator

    b = m.to_rows()
    n = len(b)
    if n <= 1:
        return IntMatrix.from_rows(b)

    # integral Gram-Schmidt bookkeeping
    d = [1] * (n + 1)
    lam = [[0] * n for _ in range(n)]

    def init_gs():
        for i in range(n):
            for j in range(i + 1):
                u = _dot(b[i], b[j])
                for k in range(j):
                    u = (d[k + 1] * u - lam[i][k] * lam[j][k]) // d[k]
                if j < i:
                    lam[i][j] = u
                else:
                    if u == 0:
                        raise RankDeficientError("rows are linearly dependent")
                    d[i + 1] = u

    def redi(k, l):
        # size-reduce row k against row l
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swapi(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lam_ = lam[k][k - 1]
        bnew = (d[k - 1] * d[k + 1] + lam_ * lam_) // d[k]
        for i in range(k + 1, n):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lam_ * t) // d[k]
            lam[i][k - 1] = (bnew * t + lam_ * lam[i][k]) // d[k + 1]
        d[k] = bnew

    init_gs()
    k = 1
    while k < n:
        redi(k, k - 1)
        if den * (d[k + 1] * d[k - 1] + lam[k][k - 1] ** 2) < num * d[k] ** 2:
            swapi(k)
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                redi(k, l)
            k += 1

    b.sort(key=lambda row: (_dot(row, row), row))
    return IntMatrix.from_rows(b)
