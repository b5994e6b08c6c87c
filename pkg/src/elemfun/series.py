"""
Taylor series kernels.

Two families live here:

* binary-splitting evaluation of atan(1/x) and atanh(1/x) for integer x,
  used to precompute logarithms, arctangents, pi and log(2);

* rectangular-splitting evaluation of the short series for sinh, sin,
  log(1+d) and atan(d) on reduced arguments, costing O(sqrt(N)) full
  multiplications for N terms.
"""

import math

from gmpy2 import mpz

from .fixedpoint import FixedPoint, _tdiv

__all__ = [
    "atan_recip", "log_int", "atan_frac", "pi_fixed", "log2_fixed",
    "sinh_reduced", "sin_cos_reduced", "log1p_short", "atan_short",
    "sinh_term_count",
]


# ----------------------------------------------------------------------
# binary splitting: atan(1/x), atanh(1/x)

def atan_recip(x, B, hyperbolic=False):
    """atan(1/x) (or atanh(1/x)) to B fractional bits, x integer >= 2."""
    x = mpz(x)
    if x < 2:
        raise ValueError("atan_recip requires x >= 2")
    lgx = math.log2(x)
    N = int(math.ceil((B + 4) / (2 * lgx))) + 2
    sigma = 1 if hyperbolic else -1

    # S(a,b) = sum_{k=a}^{b-1} sigma^(k-a) x^(-2(k-a)) / (2k+1) = T/(P*D)
    def rec(a, b):
        if b - a == 1:
            return mpz(1), mpz(2 * a + 1), mpz(1)
        mid = (a + b) // 2
        T1, P1, D1 = rec(a, mid)
        T2, P2, D2 = rec(mid, b)
        h = mid - a
        x2h = x ** (2 * h)
        s = 1 if (sigma == 1 or h % 2 == 0) else -1
        T = T1 * P2 * D2 * x2h + s * T2 * P1 * D1
        return T, P1 * P2, D1 * D2 * x2h

    T, P, D = rec(0, N)
    man = _tdiv(T << B, P * D * x)
    return FixedPoint(man, B)


_log_cache = {}
_const_cache = {}


def log_int(k, B):
    """log(k) for integer k >= 1, via log(m/(m-1)) = 2 atanh(1/(2m-1))."""
    if k < 1:
        raise ValueError("log_int requires k >= 1")
    if k == 1:
        return FixedPoint(0, B)
    key = (k, B)
    if key not in _log_cache:
        acc = log_int(k - 1, B).man if k > 2 else mpz(0)
        acc += atan_recip(2 * k - 1, B, hyperbolic=True).man * 2
        _log_cache[key] = FixedPoint(acc, B)
    return _log_cache[key]


def pi_fixed(B):
    """pi via atan(1) = 4 atan(1/5) - atan(1/239)."""
    key = ("pi", B)
    if key not in _const_cache:
        man = 16 * atan_recip(5, B).man - 4 * atan_recip(239, B).man
        _const_cache[key] = FixedPoint(man, B)
    return _const_cache[key]


def log2_fixed(B):
    """log(2) = 4 atanh(1/7) + 2 atanh(1/17)."""
    key = ("log2", B)
    if key not in _const_cache:
        man = (4 * atan_recip(7, B, hyperbolic=True).man
               + 2 * atan_recip(17, B, hyperbolic=True).man)
        _const_cache[key] = FixedPoint(man, B)
    return _const_cache[key]


def atan_frac(p, q, B):
    """atan(p/q) for integers 0 <= p <= q, q > 0.

    Reduces through atan(p/q) = atan(1/x) + atan(p'/q') with shrinking
    numerator, then sums the reciprocal arctangents by binary splitting.
    """
    if not (0 <= p <= q) or q <= 0:
        raise ValueError("atan_frac requires 0 <= p <= q, q > 0")
    if p == q:
        return FixedPoint(pi_fixed(B).man >> 2, B)
    acc = mpz(0)
    p, q = mpz(p), mpz(q)
    while p:
        x = -(-q // p)  # ceil(q/p), so 1/x <= p/q
        if x < 2:
            # p/q in (1/2, 1): split off atan(1) is not available; use x=2
            x = mpz(2)
        # atan(p/q) = atan(1/x) + atan((p*x - q)/(q*x + p))
        acc += atan_recip(x, B).man
        p, q = p * x - q, q * x + p
        if p < 0:
            # can only happen via the x=2 adjustment; fold the sign in
            acc -= atan_frac(-p, q, B).man
            p = mpz(0)
    return FixedPoint(acc, B)


# ----------------------------------------------------------------------
# rectangular splitting

def _rect_factorial_series(zman, wp, N, f):
    """sum_{k=0}^{N-1} z^k / F_k with F_k = f(1)*...*f(k), F_0 = 1.

    z is a wp-bit fixed-point mantissa; f(l) returns a (signed) small
    integer.  Evaluated blockwise with O(sqrt(N)) full multiplications.
    """
    if N <= 0:
        return mpz(0)
    b = max(1, math.isqrt(N - 1) + 1)
    nblocks = -(-N // b)
    zp = [mpz(1) << wp]
    for _ in range(b):
        zp.append(_tdiv(zp[-1] * zman, mpz(1) << wp))
    fs = [mpz(1)] + [mpz(f(l)) for l in range(1, N)]
    acc = mpz(0)
    for j in range(nblocks - 1, -1, -1):
        lo, hi = j * b, min((j + 1) * b, N)
        width = hi - lo
        # suffix products inside the block: w[i] = f[lo+i+1]*...*f[hi-1]
        w = [mpz(1)] * width
        for i in range(width - 2, -1, -1):
            w[i] = w[i + 1] * fs[lo + i + 1]
        P = w[0] * fs[lo]
        inner = sum(w[i] * zp[i] for i in range(width))
        if acc:
            inner += _tdiv(zp[b] * acc, mpz(1) << wp)
        acc = _tdiv(inner, P)
    return acc


def sinh_term_count(t, B):
    """Minimal N with |t|^(2N+1)/(2N+1)! < 2^(-B-2)."""
    if t.is_zero():
        return 0
    lgt = t.man.bit_length() - t.fb  # |t| < 2^lgt
    target = -(B + 2)
    N = 0
    while (2 * N + 1) * lgt - math.lgamma(2 * N + 2) / math.log(2) >= target:
        N += 1
    return N


def _check_reduced(t):
    if abs(t.man) > (mpz(1) << max(t.fb - 8, 0)):
        raise ValueError("reduced argument must satisfy |t| <= 2^-8")


def sinh_reduced(t, B):
    """sinh(t) to within 2^(-B-2) for |t| <= 2^-8."""
    _check_reduced(t)
    if t.is_zero():
        return FixedPoint(0, B)
    wp = B + 32
    tw = t.with_frac_bits(wp)
    N = sinh_term_count(t, B)
    z = _tdiv(tw.man * tw.man, mpz(1) << wp)
    s = _rect_factorial_series(z, wp, N, lambda l: (2 * l) * (2 * l + 1))
    return FixedPoint(_tdiv(s * tw.man, mpz(1) << wp), wp).with_frac_bits(B)


def sin_cos_reduced(t, B):
    """(sin t, cos t) for |t| <= 2^-8; cos recovered as sqrt(1 - sin^2)."""
    _check_reduced(t)
    wp = B + 32
    if t.is_zero():
        return FixedPoint(0, B), FixedPoint.from_int(1, B)
    tw = t.with_frac_bits(wp)
    N = sinh_term_count(t, B)
    z = _tdiv(tw.man * tw.man, mpz(1) << wp)
    s = _rect_factorial_series(z, wp, N, lambda l: -(2 * l) * (2 * l + 1))
    sman = _tdiv(s * tw.man, mpz(1) << wp)
    sin_t = FixedPoint(sman, wp)
    one = FixedPoint.from_int(1, wp)
    cos_t = one.sub(sin_t.mul(sin_t, wp)).sqrt(wp)
    return sin_t.with_frac_bits(B), cos_t.with_frac_bits(B)


def _short_poly(dman, wp, coeffs):
    """sum_k coeffs[k] * d^k (k >= 1 handled by caller shifting).

    coeffs is a list of (num, den) pairs of small integers for k = 0, 1...
    Paterson-Stockmeyer blocking; the per-term divisions are short.
    """
    n = len(coeffs)
    if n == 0:
        return mpz(0)
    b = max(1, math.isqrt(n - 1) + 1)
    nblocks = -(-n // b)
    zp = [mpz(1) << wp]
    for _ in range(b):
        zp.append(_tdiv(zp[-1] * dman, mpz(1) << wp))
    acc = mpz(0)
    for j in range(nblocks - 1, -1, -1):
        lo, hi = j * b, min((j + 1) * b, n)
        inner = mpz(0)
        for i in range(hi - lo):
            num, den = coeffs[lo + i]
            inner += _tdiv(zp[i] * num, mpz(den))
        if acc:
            inner += _tdiv(zp[b] * acc, mpz(1) << wp)
        acc = inner
    return acc


class OrderError(ValueError):
    """Short-series argument too large for the requested order."""


def _check_short(d, m, B):
    if m < 2:
        raise ValueError("order must be >= 2")
    lgd = d.man.bit_length() - d.fb
    if lgd > -(B // m) + 4:
        raise OrderError("delta too large for order-%d series at %d bits"
                         % (m, B))


def log1p_short(d, m, B):
    """log(1+d) via the order-m truncated series; |d| <= 2^(-B/m+4)."""
    _check_short(d, m, B)
    if d.is_zero():
        return FixedPoint(0, B)
    wp = B + 32
    dw = d.with_frac_bits(wp)
    coeffs = [(1 if k % 2 == 0 else -1, k + 1) for k in range(m - 1)]
    s = _short_poly(dw.man, wp, coeffs)
    return FixedPoint(_tdiv(s * dw.man, mpz(1) << wp), wp).with_frac_bits(B)


def atan_short(d, m, B):
    """atan(d) via the alternating odd series through order m."""
    _check_short(d, m, B)
    if d.is_zero():
        return FixedPoint(0, B)
    wp = B + 32
    dw = d.with_frac_bits(wp)
    nterms = (m - 1) // 2 + 1  # odd exponents 2k+1 <= m
    coeffs = [(1 if k % 2 == 0 else -1, 2 * k + 1) for k in range(nterms)]
    z = _tdiv(dw.man * dw.man, mpz(1) << wp)
    s = _short_poly(z, wp, coeffs)
    return FixedPoint(_tdiv(s * dw.man, mpz(1) << wp), wp).with_frac_bits(B)
