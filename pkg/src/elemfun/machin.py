"""
Simultaneous Machin-like formulas.

A formula expresses the basis values log(p_1), ..., log(p_n) (or the
irreducible angles atan(b_j/a_j)) as an exact rational matrix M applied
to a vector of rapidly converging series 2*atanh(1/x) (or atan(1/x)) for
a set X of large integers.  Built-in formulas for the first 25 prime
sets and the first 22 Gaussian-prime sets ship as a data file; their
matrices are recovered at runtime by factoring (x+1)/(x-1) or x^2+1 over
the basis and inverting the exponent matrix.
"""

import math
import os
from fractions import Fraction

from gmpy2 import mpz

from .fixedpoint import FixedPoint, _tdiv
from .powerprod import GaussianInt
from .relations import Basis
from . import series

__all__ = [
    "MachinFormula", "SmoothCandidate",
    "NonSmoothError", "SingularMatrixError", "InsufficientRankError",
    "builtin_formula", "recover_matrix", "relation_determinant",
    "eval_basis", "lehmer_measure", "find_candidates", "find_formula",
    "log_prime_incremental", "exponent_vector",
    "save_formula", "load_formula",
]

_DATA_PATH = os.path.join(os.path.dirname(__file__), "data",
                          "machin_tables.txt")


class NonSmoothError(ValueError):
    """Argument does not factor over the basis."""


class SingularMatrixError(ValueError):
    """Exponent matrix is not invertible."""


class InsufficientRankError(ValueError):
    """Candidate pool does not span the basis."""


class MachinFormula:
    """Basis values = M times the series vector over arguments X."""

    __slots__ = ("basis", "X", "M")

    def __init__(self, basis, X, M):
        self.basis = basis
        self.X = tuple(int(x) for x in X)
        self.M = tuple(tuple(Fraction(e) for e in row) for row in M)
        n = basis.n
        if len(self.X) != n or len(self.M) != n \
                or any(len(r) != n for r in self.M):
            raise ValueError("formula dimensions disagree with basis")

    @property
    def kind(self):
        return self.basis.kind

    @property
    def n(self):
        return self.basis.n


class SmoothCandidate:
    __slots__ = ("x", "E")

    def __init__(self, x, E):
        self.x = int(x)
        self.E = tuple(int(e) for e in E)

    def __repr__(self):
        return "SmoothCandidate(%d, %r)" % (self.x, list(self.E))


# ----------------------------------------------------------------------
# factorization of arguments over the basis

def _factor_smooth(v, ps):
    """Exponents of v over the list ps, or None if a cofactor remains."""
    v = mpz(v)
    exps = [0] * len(ps)
    for i, p in enumerate(ps):
        while v % p == 0:
            v //= p
            exps[i] += 1
    return exps if v == 1 else None


def exponent_vector(x, basis):
    """Row E with series(x) = sum_j E_j * basis_j.

    log kind: (x+1)/(x-1) = prod p_j^(E_j), so that
    2*atanh(1/x) = sum E_j log(p_j).

    atan kind: factor x + i over the Gaussian primes; each factor
    contributes +e or -e to E depending on whether the first-quadrant
    representative a+bi or its conjugate divides x + i, and the leftover
    unit i^u folds into the coefficient of atan(1) = pi/4 as 2u.
    """
    if basis.kind == "log":
        if x < 2:
            raise ValueError("log-kind arguments must satisfy x >= 2")
        up = _factor_smooth(x + 1, basis.primes)
        dn = _factor_smooth(x - 1, basis.primes)
        if up is None or dn is None:
            raise NonSmoothError("%d^2 - 1 is not smooth over the basis" % x)
        return [u - d for u, d in zip(up, dn)]

    if x < 1:
        raise ValueError("atan-kind arguments must satisfy x >= 1")
    norms = [a * a + b * b for a, b in basis.gprimes]
    exps = _factor_smooth(x * x + 1, norms)
    if exps is None:
        raise NonSmoothError("%d^2 + 1 is not smooth over the basis" % x)
    E = [0] * basis.n
    z = GaussianInt(x, 1)
    w = GaussianInt(1)
    for j, ((a, b), e) in enumerate(zip(basis.gprimes, exps)):
        if j == 0 or e == 0:
            continue
        q = norms[j]
        # (x+i)/(a+bi) is a Gaussian integer iff q divides both parts of
        # (x+i)(a-bi); otherwise the conjugate prime divides x+i
        if (x * a + b) % q == 0 and (a - x * b) % q == 0:
            E[j] = e
            w = w.mul(GaussianInt(a, b).pow(e))
        else:
            E[j] = -e
            w = w.mul(GaussianInt(a, -b).pow(e))
    w = w.mul(GaussianInt(1, 1).pow(exps[0]))
    # z = i^u * w must hold with a unit i^u; recover u exactly
    nw = w.norm()
    ur = (z.re * w.re + z.im * w.im)
    ui = (z.im * w.re - z.re * w.im)
    if ur % nw or ui % nw:
        raise NonSmoothError("inconsistent Gaussian factorization of %d+i" % x)
    unit = GaussianInt(ur // nw, ui // nw)
    if not unit.is_unit():
        raise NonSmoothError("inconsistent Gaussian factorization of %d+i" % x)
    u = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}[
        (int(unit.re), int(unit.im))]
    # atan(1/x) = u*(pi/2) + exps[0]*(pi/4) + sum_{j>=1} E_j atan(b_j/a_j),
    # but only modulo 2*pi = 8*(pi/4): the unit fixes the angle up to full
    # turns.  Pin the pi/4 coefficient numerically (the residual branch
    # offset is an exact multiple of 8).
    rest = sum(E[j] * math.atan2(b, a)
               for j, (a, b) in enumerate(basis.gprimes) if j > 0)
    e0f = (math.atan2(1, x) - rest) / (math.pi / 4)
    e0 = round(e0f)
    if abs(e0f - e0) > 1e-6 or (e0 - exps[0] - 2 * u) % 8:
        raise NonSmoothError("inconsistent Gaussian factorization of %d+i" % x)
    E[0] = e0
    return E


# ----------------------------------------------------------------------
# exact linear algebra over Q

def _mat_inverse(rows):
    """Exact inverse of a square Fraction matrix by Gauss-Jordan."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("exponent matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _mat_det(rows):
    """Exact determinant of a square integer matrix (fraction-free)."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def recover_matrix(X, basis):
    """M = R^(-1) where row k of R is the exponent vector of X[k]."""
    R = [exponent_vector(x, basis) for x in X]
    return _mat_inverse(R)


def relation_determinant(X, basis):
    """det of the exponent matrix R for the argument set X.

    Rows are ordered by decreasing argument (the order in which the
    greedy search accumulates them), which fixes the sign.
    """
    return _mat_det([exponent_vector(x, basis)
                     for x in sorted(X, reverse=True)])


# ----------------------------------------------------------------------
# built-in tables

_builtin_X = None
_builtin_cache = {}


def _load_builtin_X():
    global _builtin_X
    if _builtin_X is None:
        table = {}
        with open(_DATA_PATH) as f:
            header = f.readline().strip()
            if header != "machin-tables v1":
                raise ValueError("bad machin table data file")
            for line in f:
                if not line.strip():
                    continue
                kind, n, xs = line.split()
                table[(kind, int(n))] = tuple(int(v) for v in xs.split(","))
        _builtin_X = table
    return _builtin_X


def builtin_formula(kind, n):
    """Built-in n-term formula for the first n primes or Gaussian primes."""
    key = (kind, n)
    if key not in _builtin_cache:
        data = _load_builtin_X()
        if key not in data:
            raise ValueError("no built-in %s formula for n=%d" % (kind, n))
        X = data[key]
        basis = Basis.log_primes(n) if kind == "log" \
            else Basis.gaussian_atan(n)
        _builtin_cache[key] = MachinFormula(basis, X, recover_matrix(X, basis))
    return _builtin_cache[key]


# ----------------------------------------------------------------------
# evaluation

def _series_value(kind, x, fb):
    if kind == "log":
        return FixedPoint(2 * series.atan_recip(x, fb, hyperbolic=True).man,
                          fb)
    if x == 1:
        return FixedPoint(series.pi_fixed(fb).man >> 2, fb)
    return series.atan_recip(x, fb)


def eval_basis(formula, B):
    """All basis values to B bits; each series is evaluated once."""
    if B < 64:
        raise ValueError("B must be >= 64")
    wp = B + 64
    svals = [_series_value(formula.kind, x, wp).man for x in formula.X]
    out = []
    for row in formula.M:
        acc = mpz(0)
        for coef, sm in zip(row, svals):
            if coef:
                acc += _tdiv(mpz(coef.numerator) * sm,
                             mpz(coef.denominator))
        out.append(FixedPoint(acc, wp).with_frac_bits(B))
    return out


def lehmer_measure(X):
    """sum over x of 1/log10|x|; lower means faster series."""
    mu = 0.0
    for x in X:
        ax = abs(int(x))
        if ax <= 1:
            return math.inf
        mu += 1.0 / math.log10(ax)
    return mu


# ----------------------------------------------------------------------
# formula search

def _smooth_values(primes, limit):
    """All primes-smooth integers in [1, limit], ascending."""
    vals = [1]
    for p in primes:
        extended = []
        for v in vals:
            pv = v * p
            while pv <= limit:
                extended.append(pv)
                pv *= p
        vals.extend(extended)
    vals.sort()
    return vals


def find_candidates(basis, x_max):
    """All x <= x_max whose x^2 -/+ 1 factors over the basis, ascending."""
    out = []
    if basis.kind == "log":
        # enumerate smooth x-1, then trial-divide x+1
        for v in _smooth_values(basis.primes, x_max - 1):
            x = v + 1
            if x < 2 or x > x_max:
                continue
            if _factor_smooth(x + 1, basis.primes) is not None:
                out.append(SmoothCandidate(x, exponent_vector(x, basis)))
    else:
        norms = [a * a + b * b for a, b in basis.gprimes]
        for x in range(1, x_max + 1):
            if _factor_smooth(x * x + 1, norms) is not None:
                out.append(SmoothCandidate(x, exponent_vector(x, basis)))
    return out


def find_formula(basis, candidates):
    """Greedy selection from the largest candidate down; M = R^(-1)."""
    n = basis.n
    chosen = []
    echelon = []  # row-reduced copies of the chosen exponent rows
    for cand in sorted(candidates, key=lambda c: -c.x):
        row = [Fraction(e) for e in cand.E]
        for piv_col, piv_row in echelon:
            if row[piv_col]:
                f = row[piv_col] / piv_row[piv_col]
                row = [x - f * y for x, y in zip(row, piv_row)]
        lead = next((j for j in range(n) if row[j]), None)
        if lead is None:
            continue
        echelon.append((lead, row))
        chosen.append(cand)
        if len(chosen) == n:
            break
    if len(chosen) < n:
        raise InsufficientRankError(
            "candidates span rank %d < %d" % (len(chosen), n))
    X = sorted(c.x for c in chosen)
    return MachinFormula(basis, X, recover_matrix(X, basis))


def log_prime_incremental(p, known, B):
    """log(p) from smaller prime logs plus one fast atanh series.

    log(p) = log2 + (log((p-1)/2) + log((p+1)/2))/2 + atanh(1/(2p^2-1)).
    `known` maps primes to FixedPoint logs at >= B bits.
    """
    if p < 3 or not _is_prime_int(p):
        raise ValueError("p must be an odd prime")
    wp = B + 32
    acc = mpz(0)
    half = [0, 0]  # mantissa accumulators for log((p-1)/2), log((p+1)/2)
    for idx, m in enumerate(((p - 1) // 2, (p + 1) // 2)):
        v = m
        for q, lg in known.items():
            e = 0
            while v % q == 0:
                v //= q
                e += 1
            if e:
                half[idx] += e * lg.with_frac_bits(wp).man
        if v != 1:
            raise ValueError("missing log of a prime factor of %d" % m)
    if 2 not in known:
        raise ValueError("log(2) must be known")
    acc = known[2].with_frac_bits(wp).man
    acc += (half[0] + half[1]) >> 1
    acc += series.atan_recip(2 * p * p - 1, wp, hyperbolic=True).man
    return FixedPoint(acc, wp).with_frac_bits(B)


def _is_prime_int(k):
    if k < 2:
        return False
    i = 2
    while i * i <= k:
        if k % i == 0:
            return False
        i += 1
    return True


# ----------------------------------------------------------------------
# formula file round-trip

def save_formula(formula, path):
    lines = ["machin v1; kind=%s; n=%d" % (formula.kind, formula.n),
             "X=" + ",".join(str(x) for x in formula.X)]
    for row in formula.M:
        lines.append("M=" + ",".join(
            "%d/%d" % (c.numerator, c.denominator) for c in row))
    text = "\n".join(lines) + "\n"
    with open(path, "w") as f:
        f.write(text)
    return text


def load_formula(path):
    with open(path) as f:
        lines = [ln.strip() for ln in f if ln.strip()]
    head = lines[0]
    if not head.startswith("machin v1;"):
        raise ValueError("not a machin v1 file")
    fields = dict(part.strip().split("=", 1) for part in head.split(";")[1:])
    kind, n = fields["kind"], int(fields["n"])
    if not lines[1].startswith("X="):
        raise ValueError("missing X line")
    X = [int(v) for v in lines[1][2:].split(",")]
    M = []
    for ln in lines[2:2 + n]:
        if not ln.startswith("M="):
            raise ValueError("missing matrix row")
        M.append([Fraction(part) for part in ln[2:].split(",")])
    basis = Basis.log_primes(n) if kind == "log" else Basis.gaussian_atan(n)
    return MachinFormula(basis, X, M)
