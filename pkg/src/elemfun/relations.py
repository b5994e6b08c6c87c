"""
Approximate integer relation tables and iterated argument reduction.

Phase 1 precomputes, for a basis of logarithms of primes (or doubled
Gaussian-prime arctangents), a table of approximate homogeneous relations
sum_j d_{i,j} alpha_j = eps_i with |eps_i| shrinking roughly by the
convergence factor C at each step.  Phase 2 reduces a given x below a
target size by subtracting integer multiples of these relations, which
simultaneously accumulates the exponent vector for the compensating
power product.
"""

import math

from gmpy2 import mpz

from .fixedpoint import FixedPoint
from .lattice import IntMatrix, lll_reduce
from . import series

__all__ = [
    "Basis", "Relation", "RelationTable", "ReductionResult",
    "PrecisionExhausted", "generate_table", "reduce_argument",
    "weighted_norm", "coeff_growth_estimate",
    "table_from_coeffs", "save_table", "load_table",
]

DEFAULT_COEFF_LIMIT = 1 << 15  # relations fit 16-bit table entries


class PrecisionExhausted(ArithmeticError):
    """Basis values are too coarse for the requested reduction target."""


def _is_prime(k):
    if k < 2:
        return False
    i = 2
    while i * i <= k:
        if k % i == 0:
            return False
        i += 1
    return True


def first_primes(n):
    out, k = [], 2
    while len(out) < n:
        if _is_prime(k):
            out.append(k)
        k += 1
    return out


def first_gaussian_primes(n):
    """First n nonreal Gaussian primes (a, b), a >= b >= 1, by norm."""
    out = [(1, 1)]
    p = 5
    while len(out) < n:
        if _is_prime(p) and p % 4 == 1:
            for b in range(1, int(math.isqrt(p // 2)) + 1):
                a2 = p - b * b
                a = math.isqrt(a2)
                if a * a == a2:
                    out.append((a, b))
                    break
        p += 2
    return out[:n]


class Basis:
    """Basis of reduction values: log(p_i) or 2*atan(b_j/a_j)."""

    __slots__ = ("kind", "primes", "gprimes")

    def __init__(self, kind, primes=None, gprimes=None):
        if kind == "log":
            if not primes or primes[0] != 2:
                raise ValueError("log basis must start with the prime 2")
            if any(b >= a for a, b in zip(primes[1:], primes)):
                raise ValueError("primes must be strictly increasing")
            self.primes = list(primes)
            self.gprimes = None
        elif kind == "atan":
            if not gprimes or tuple(gprimes[0]) != (1, 1):
                raise ValueError("atan basis must start with 1+i")
            if any(a < b for a, b in gprimes):
                raise ValueError("Gaussian primes must satisfy a >= b")
            self.gprimes = [tuple(g) for g in gprimes]
            self.primes = None
        else:
            raise ValueError("kind must be 'log' or 'atan'")
        self.kind = kind

    @classmethod
    def log_primes(cls, n):
        return cls("log", primes=first_primes(n))

    @classmethod
    def gaussian_atan(cls, n):
        return cls("atan", gprimes=first_gaussian_primes(n))

    @property
    def n(self):
        return len(self.primes if self.kind == "log" else self.gprimes)

    def values(self, fb):
        """Basis values alpha_i at fb fractional bits."""
        if self.kind == "log":
            return [series.log_int(p, fb) for p in self.primes]
        return [FixedPoint(2 * series.atan_frac(b, a, fb).man, fb)
                for a, b in self.gprimes]

    def norm_weights(self):
        """log2 weights for the power-product norm; the free prime weighs 0."""
        if self.kind == "log":
            return [0.0 if p == 2 else math.log2(p) for p in self.primes]
        return [0.0 if (a, b) == (1, 1) else math.log2(a * a + b * b)
                for a, b in self.gprimes]

    def labels(self):
        if self.kind == "log":
            return [str(p) for p in self.primes]
        return ["%d+%di" % g for g in self.gprimes]

    def __eq__(self, other):
        return (isinstance(other, Basis) and self.kind == other.kind
                and self.primes == other.primes
                and self.gprimes == other.gprimes)


class Relation:
    __slots__ = ("coeffs", "eps", "eps_exact")

    def __init__(self, coeffs, eps_exact):
        self.coeffs = tuple(int(c) for c in coeffs)
        self.eps_exact = eps_exact
        self.eps = float(eps_exact)

    def __repr__(self):
        return "Relation(%r, eps=%.5g)" % (list(self.coeffs), self.eps)


class RelationTable:
    __slots__ = ("basis", "C", "relations", "coeff_limit", "complete")

    def __init__(self, basis, C, relations, coeff_limit, complete):
        self.basis = basis
        self.C = C
        self.relations = list(relations)
        self.coeff_limit = coeff_limit
        self.complete = complete  # False: generation stopped at coeff_limit

    def max_r(self):
        """Bits of reduction supported by the deepest relation."""
        if not self.relations:
            return 0
        last = self.relations[-1].eps_exact
        if last.man == 0:
            return last.fb
        return last.fb - last.man.bit_length()


class ReductionResult:
    __slots__ = ("coeffs", "residual", "achieved_r", "norm")

    def __init__(self, coeffs, residual, norm):
        self.coeffs = tuple(int(c) for c in coeffs)
        self.residual = residual
        self.norm = norm
        if residual.man == 0:
            self.achieved_r = math.inf
        else:
            self.achieved_r = float(residual.fb - residual.man.bit_length())


def _exact_eps(coeffs, alpha_mans, fb):
    acc = mpz(0)
    for c, am in zip(coeffs, alpha_mans):
        if c:
            acc += c * am
    return FixedPoint(acc, fb)


def generate_table(basis, C, r_target, coeff_limit=DEFAULT_COEFF_LIMIT):
    """Algorithm phase 1: build the relation table.

    Stops once |eps| < 2^-r_target (complete) or when every further
    candidate would exceed coeff_limit (truncated, flagged on the table).
    At each scale C^i the kept relation is the candidate LLL row with the
    smallest |eps| strictly below the previous relation, except that a
    decrease by much more than the factor C is avoided whenever some row
    offers a milder decrease: large jumps force large multipliers in the
    reduction phase and hence larger power-product coefficients.
    """
    if not C > 1:
        raise ValueError("C must be > 1")
    n = basis.n
    if n < 2:
        raise ValueError("need at least two basis values")

    tp = int(r_target) + 96
    alphas = basis.values(tp)
    alpha_mans = [a.man for a in alphas]
    lgC = math.log(C, 2)

    # running scale C^i at table precision
    from fractions import Fraction
    Cfrac = Fraction(C)
    scale = FixedPoint.from_rational(Cfrac.numerator, Cfrac.denominator, tp)
    step = scale

    relations = []
    transform = [[int(j == k) for k in range(n)] for j in range(n)]
    prev_absman = mpz(1) << tp  # |eps_0| = 1: callers reduce |x| < 1 first
    complete = False
    truncated = False
    i = 0
    while True:
        i += 1
        if i > 1:
            scale = scale.mul(step, tp)
        if i * lgC > tp - 48:
            raise PrecisionExhausted(
                "table precision %d bits exhausted before reaching 2^-%d"
                % (tp, r_target))
        cols = [int((2 * scale.man * alpha_mans[j] + (mpz(1) << (2 * tp)))
                    >> (2 * tp + 1)) for j in range(n)]
        # warm start: express the scale-i lattice in the coordinates of the
        # previous reduced basis (a unimodular transform), so each LLL call
        # works on nearly reduced rows with small entries
        rows = [d + [sum(dj * cj for dj, cj in zip(d, cols))]
                for d in transform]
        reduced = lll_reduce(IntMatrix.from_rows(rows))
        transform = [row[:n] for row in reduced.to_rows()]

        candidates = []
        over_limit = False
        last = relations[-1].coeffs if relations else None
        for row in reduced.to_rows():
            d = row[:n]
            if not any(d):
                continue
            eps = _exact_eps(d, alpha_mans, tp)
            am = abs(eps.man)
            if am == 0 or am >= prev_absman:
                continue
            if last is not None and (tuple(d) == last
                                     or tuple(-c for c in d) == last):
                continue
            if max(abs(c) for c in d) > coeff_limit:
                over_limit = True
                continue
            candidates.append((am, d, eps))
        if not candidates:
            if over_limit:
                truncated = True
                break
            continue
        # prefer the smallest |eps| that still decreases by at most a
        # factor C; only when every row overshoots take the mildest jump
        in_band = [c for c in candidates
                   if c[0] * Cfrac.numerator >= prev_absman * Cfrac.denominator]
        _, d, eps = min(in_band) if in_band else max(candidates)
        if eps.man < 0:
            # canonical sign: store eps > 0 (negating a relation is free)
            d = [-c for c in d]
            eps = FixedPoint(-eps.man, tp)
        relations.append(Relation(d, eps))
        prev_absman = abs(eps.man)
        if prev_absman < (mpz(1) << (tp - r_target)):
            complete = True
            break
    return RelationTable(basis, C, relations, coeff_limit, complete)


def weighted_norm(coeffs, basis):
    """Power-product size estimate: sum |c_i| log2(p_i), free prime skipped."""
    w = basis.norm_weights()
    if len(coeffs) != len(w):
        raise ValueError("coefficient vector length mismatch")
    return float(sum(abs(c) * wi for c, wi in zip(coeffs, w)))


def coeff_growth_estimate(C, n, r):
    """Closed-form estimate of the final coefficient magnitude."""
    if not C > 1 or n < 1:
        raise ValueError("need C > 1 and n >= 1")
    if r == 0:
        return 0.0
    cn = C ** (1.0 / n)
    return C * cn / (cn - 1.0) * (2.0 ** (r / n) - 1.0)


def reduce_argument(x, table, r_target, norm_limit=math.inf):
    """Algorithm phase 2: reduce |x| < 1 below 2^-r_target.

    Walks the table once, keeping the exact residual on scaled integers
    and a double-precision shadow for the multiplier computation; the
    shadow is refreshed from the exact residual periodically.
    """
    basis = table.basis
    n = basis.n
    if not table.relations:
        return ReductionResult([0] * n, x, 0.0)
    tp = table.relations[0].eps_exact.fb
    wp = min(x.fb, tp) if x.fb else tp
    wp = max(wp, 64)

    res = x.with_frac_bits(wp)
    resman = res.man
    one = mpz(1) << wp
    eps_mans = [r.eps_exact.with_frac_bits(wp).man for r in table.relations]
    weights = basis.norm_weights()
    coeffs = [0] * n
    norm = 0.0
    thresh = one >> r_target if r_target < wp else 0

    refresh = max(1, int(40 / max(math.log2(table.C), 1e-9)))
    shadow = math.ldexp(float(resman >> max(0, wp - 900)),
                        -min(wp, 900))
    steps = 0

    for rel, em in zip(table.relations, eps_mans):
        if abs(resman) < thresh:
            break
        m = math.floor(shadow / rel.eps + 0.5)
        if m == 0:
            continue
        new_norm = norm
        for j, dj in enumerate(rel.coeffs):
            if dj:
                cj = coeffs[j]
                new_norm += (abs(cj + m * dj) - abs(cj)) * weights[j]
        if new_norm > norm_limit:
            break
        for j, dj in enumerate(rel.coeffs):
            if dj:
                coeffs[j] += m * dj
        norm = new_norm
        resman = resman - m * em
        steps += 1
        if steps % refresh == 0:
            shadow = math.ldexp(float(resman), -wp) if resman.bit_length() < 900 \
                else math.ldexp(float(resman >> (wp - 900)), -900)
        else:
            shadow -= m * rel.eps

    return ReductionResult(coeffs, FixedPoint(resman, wp), norm)


# ----------------------------------------------------------------------
# table construction from known coefficient vectors, and file round-trip

def table_from_coeffs(basis, coeff_vectors, C,
                      coeff_limit=DEFAULT_COEFF_LIMIT, precision=None):
    """Build a table from given relation coefficient vectors.

    The exact eps values are recomputed from the basis; duplicate rows
    (equal up to sign) and rows that do not strictly decrease are dropped.
    """
    if precision is None:
        precision = 256
    alphas = basis.values(precision)
    alpha_mans = [a.man for a in alphas]
    rels = []
    prev = None
    for d in coeff_vectors:
        eps = _exact_eps(d, alpha_mans, precision)
        if eps.man < 0:
            d = [-c for c in d]
            eps = FixedPoint(-eps.man, precision)
        if eps.man == 0 or (prev is not None and abs(eps.man) >= prev):
            continue
        rels.append(Relation(d, eps))
        prev = abs(eps.man)
    return RelationTable(basis, C, rels, coeff_limit, True)


def _format_C(C):
    if C == int(C):
        return str(int(C))
    return repr(float(C))


def save_table(table, path):
    lines = ["relation-table v1; kind=%s; n=%d; C=%s; coeff_limit=%d"
             % (table.basis.kind, table.basis.n, _format_C(table.C),
                table.coeff_limit)]
    lines.append("basis " + ",".join(table.basis.labels()))
    for idx, rel in enumerate(table.relations, 1):
        lines.append("i=%d eps=%s d=%s"
                     % (idx, rel.eps_exact.to_scientific(20),
                        ",".join(str(c) for c in rel.coeffs)))
    text = "\n".join(lines) + "\n"
    with open(path, "w") as f:
        f.write(text)
    return text


def load_table(path):
    with open(path) as f:
        lines = [ln.strip() for ln in f if ln.strip()]
    head = lines[0]
    if not head.startswith("relation-table v1;"):
        raise ValueError("not a relation-table v1 file")
    fields = dict(part.strip().split("=", 1)
                  for part in head.split(";")[1:])
    kind = fields["kind"]
    n = int(fields["n"])
    C = float(fields["C"])
    if C == int(C):
        C = int(C)
    coeff_limit = int(fields["coeff_limit"])
    if not lines[1].startswith("basis "):
        raise ValueError("missing basis line")
    labels = lines[1][len("basis "):].split(",")
    if kind == "log":
        basis = Basis("log", primes=[int(x) for x in labels])
    else:
        gps = []
        for lab in labels:
            a, rest = lab.split("+")
            gps.append((int(a), int(rest.rstrip("i"))))
        basis = Basis("atan", gprimes=gps)
    if basis.n != n:
        raise ValueError("basis length disagrees with header")

    coeff_vectors = []
    min_eps = 1.0
    for ln in lines[2:]:
        parts = dict(p.split("=", 1) for p in ln.split())
        coeff_vectors.append([int(c) for c in parts["d"].split(",")])
        min_eps = min(min_eps, abs(float(parts["eps"])))
    precision = int(-math.log2(min_eps)) + 96 if min_eps > 0 else 256
    return table_from_coeffs(basis, coeff_vectors, C, coeff_limit,
                             precision=precision)
