"""
Elementary functions: exp, log, sin/cos, tan, atan.

The fast path reduces the argument with a precomputed relation table
over logarithms of primes (or Gaussian-prime angles), compensates with
an exact power product, and evaluates a short sinh/sin series on the
tiny residual.  Below the crossover precisions a classical
halving-and-squaring reference evaluator is used instead; the same
reference path doubles as the test oracle.  Inverse functions run a
high-order Newton iteration on top of the forward functions.
"""

import math
import random

from gmpy2 import mpz

from .fixedpoint import FixedPoint, _shift, _tdiv
from .powerprod import pow_product, pow_product_gaussian
from .relations import Basis, generate_table, reduce_argument
from . import machin
from . import series

__all__ = [
    "EvalContext", "ContextError", "DomainError", "context_create",
    "exp_full", "cos_sin_full", "log_full", "atan_full", "tan_full",
    "reference_exp", "reference_cos_sin", "reference_log", "reference_atan",
    "EXP_CROSSOVER_BITS", "ATAN_CROSSOVER_BITS",
]

EXP_CROSSOVER_BITS = 2240
ATAN_CROSSOVER_BITS = 3400
DEFAULT_N = 13
DEFAULT_NEWTON_ORDER = 8


class ContextError(ValueError):
    """Context missing, of the wrong kind, or too small for the request."""


class DomainError(ValueError):
    """Argument outside the mathematical or policy domain."""


def _reduction_r_target(B):
    return -(-B // 40) + 64


class _ContextPart:
    __slots__ = ("basis", "values", "table")

    def __init__(self, basis, values, table):
        self.basis = basis
        self.values = values
        self.table = table


_table_cache = {}


def _get_table(kind, n, r_target, C=10):
    key = (kind, n, C, r_target)
    if key not in _table_cache:
        basis = Basis.log_primes(n) if kind == "log" \
            else Basis.gaussian_atan(n)
        _table_cache[key] = generate_table(basis, C, r_target)
    return _table_cache[key]


class EvalContext:
    """Immutable bundle of cached basis values and relation tables."""

    __slots__ = ("B_max", "newton_order", "parts")

    def __init__(self, B_max, newton_order, parts):
        self.B_max = B_max
        self.newton_order = newton_order
        self.parts = parts

    def part(self, kind):
        if kind not in self.parts:
            raise ContextError("context has no %s basis" % kind)
        return self.parts[kind]


def _build_part(kind, n, B_max):
    wp = B_max + 64
    formula = machin.builtin_formula(kind, n)
    vals = machin.eval_basis(formula, wp)
    if kind == "atan":
        # reduction works with the doubled angles 2*atan(b/a)
        vals = [FixedPoint(v.man << 1, wp) for v in vals]
    # spot-check a few entries against an independent series evaluation
    rng = random.Random(n * 1000003 + B_max)
    for j in sorted(rng.sample(range(n), min(3, n))):
        if kind == "log":
            ref = series.log_int(formula.basis.primes[j], wp)
        else:
            a, b = formula.basis.gprimes[j]
            ref = FixedPoint(series.atan_frac(b, a, wp).man << 1, wp)
        if abs(vals[j].man - ref.man) > (mpz(1) << 8):
            raise ArithmeticError(
                "cached %s basis value %d fails verification" % (kind, j))
    table = _get_table(kind, n, _reduction_r_target(B_max))
    return _ContextPart(formula.basis, vals, table)


def context_create(kind, n=DEFAULT_N, B_max=33220,
                   newton_order=DEFAULT_NEWTON_ORDER):
    """Precompute basis values and relation tables.

    kind is "log", "atan" or "both"; n is the number of primes (Gaussian
    primes) in the reduction basis.
    """
    if not 5 <= newton_order <= 15:
        raise ValueError("newton_order must lie in [5, 15]")
    kinds = ("log", "atan") if kind == "both" else (kind,)
    parts = {}
    for k in kinds:
        if k not in ("log", "atan"):
            raise ValueError("kind must be 'log', 'atan' or 'both'")
        parts[k] = _build_part(k, n, B_max)
    return EvalContext(B_max, newton_order, parts)


# ----------------------------------------------------------------------
# reference evaluators (halving / repeated squaring)

def _default_halvings(B):
    # balance r squarings against the O(sqrt(N)) series multiplications
    return max(9, int(math.ceil((B / 4.0) ** (1.0 / 3.0))))


def _exp_guard(x, B):
    intbits = max(0, x.man.bit_length() - x.fb)
    return B + 64 + intbits


def reference_exp(x, B, r=None):
    """exp(x) by sinh series on x/2^r followed by r squarings."""
    if x.is_zero():
        return FixedPoint.from_int(1, B)
    if abs(float(x)) > 2.0 ** 60:
        raise DomainError("exponent argument out of range")
    wp = _exp_guard(x, B)
    if r is None:
        r = _default_halvings(B)
    log2 = series.log2_fixed(wp)
    k = x.nearest_int_quotient(log2)
    t = x.with_frac_bits(wp).sub(log2.mul_int(k))
    s = series.sinh_reduced(t.shift(-r), wp)
    u = s.add(s.mul(s, wp).add(FixedPoint.from_int(1, wp)).sqrt(wp))
    for _ in range(r):
        u = u.mul(u, wp)
    return u.shift(k).with_frac_bits(B)


def reference_cos_sin(x, B, r=None):
    """(cos x, sin x) by sin series on x/2^r and r double-angle steps."""
    if x.is_zero():
        return FixedPoint.from_int(1, B), FixedPoint(0, B)
    if abs(float(x)) > 2.0 ** 60:
        raise DomainError("trigonometric argument out of range")
    wp = _exp_guard(x, B)
    if r is None:
        r = _default_halvings(B)
    half_pi = FixedPoint(series.pi_fixed(wp).man >> 1, wp)
    k = x.nearest_int_quotient(half_pi)
    t = x.with_frac_bits(wp).sub(half_pi.mul_int(k))
    s, c = series.sin_cos_reduced(t.shift(-r), wp)
    one = FixedPoint.from_int(1, wp)
    for _ in range(r):
        s, c = FixedPoint(_shift(2 * s.man * c.man, -wp), wp), \
            one.sub(FixedPoint(_shift(2 * s.man * s.man, -wp), wp))
    c, s = _rotate_quadrant(c, s, k)
    return c.with_frac_bits(B), s.with_frac_bits(B)


def _rotate_quadrant(c, s, k):
    """cos + i sin multiplied by i^k."""
    k &= 3
    if k == 0:
        return c, s
    if k == 1:
        return s.neg(), c
    if k == 2:
        return c.neg(), s.neg()
    return s, c.neg()


def _mantissa_frame(x):
    """(m, e) with x = m * 2^e and m in [0.75, 1.5)."""
    e = x.man.bit_length() - x.fb
    m = x.shift(-e)
    if m.man < (mpz(3) << (m.fb - 2)):
        e -= 1
        m = x.shift(-e)
    return m, e


def reference_log(x, B):
    """log(x) by the atanh series on the mantissa frame."""
    if x.sign() <= 0:
        raise DomainError("logarithm of a nonpositive value")
    wp = B + 32
    m, e = _mantissa_frame(x.with_frac_bits(wp))
    one = FixedPoint.from_int(1, wp)
    z = m.sub(one).div(m.add(one), wp)  # |z| <= 1/5
    acc = FixedPoint(0, wp)
    if not z.is_zero():
        zbits = wp - z.man.bit_length()  # |z| < 2^-zbits+1
        N = int(math.ceil((wp + 4) / (2.0 * max(zbits - 1, 1)))) + 2
        z2 = z.mul(z, wp)
        coeffs = [(1, 2 * k + 1) for k in range(N)]
        s = series._short_poly(z2.man, wp, coeffs)
        acc = FixedPoint(_shift(2 * s * z.man, -wp), wp)
    if e:
        acc = acc.add(series.log2_fixed(wp).mul_int(e))
    return acc.with_frac_bits(B)


def reference_atan(x, B):
    """atan(x) by repeated halving and the odd arctangent series."""
    if x.is_zero():
        return FixedPoint(0, B)
    if x.sign() < 0:
        return reference_atan(x.neg(), B).neg()
    wp = B + 32
    xa = x.with_frac_bits(wp)
    shift = FixedPoint(0, wp)
    one = FixedPoint.from_int(1, wp)
    if one < xa:
        # atan(x) = pi/2 - atan(1/x)
        shift = FixedPoint(series.pi_fixed(wp).man >> 1, wp)
        xa = one.div(xa, wp).neg()
    r = _default_halvings(B)
    neg = xa.sign() < 0
    t = xa.abs()
    for _ in range(r):
        # atan(t) = 2 atan(t / (1 + sqrt(1 + t^2)))
        t = t.div(one.add(one.add(t.mul(t, wp)).sqrt(wp)), wp)
    zbits = wp - t.man.bit_length() if t.man else wp
    N = int(math.ceil((wp + 4) / (2.0 * max(zbits - 1, 1)))) + 2
    z2 = t.mul(t, wp)
    coeffs = [(1 if k % 2 == 0 else -1, 2 * k + 1) for k in range(N)]
    s = series._short_poly(z2.man, wp, coeffs)
    acc = FixedPoint(_shift(s * t.man, -wp) << r, wp)
    if neg:
        acc = acc.neg()
    return shift.add(acc).with_frac_bits(B)


# ----------------------------------------------------------------------
# fast forward functions

def _check_ctx(ctx, B):
    if ctx is None:
        raise ContextError("a context is required at this precision")
    # slack covers the internal guard precisions of the Newton inverses;
    # the extra bits are absorbed by the caller's error budget
    if B > ctx.B_max + 128:
        raise ContextError("context supports only %d bits" % ctx.B_max)


def exp_full(x, B, ctx=None):
    """exp(x) via multi-prime argument reduction (reference path below
    the crossover precision)."""
    if x.is_zero():
        return FixedPoint.from_int(1, B)
    if B < EXP_CROSSOVER_BITS or ctx is None:
        return reference_exp(x, B)
    _check_ctx(ctx, B)
    if abs(float(x)) > 2.0 ** 60:
        raise DomainError("exponent argument out of range")
    part = ctx.part("log")
    wp = _exp_guard(x, B)
    logs = [v.with_frac_bits(wp) for v in part.values]
    k = x.nearest_int_quotient(logs[0])
    t0 = x.with_frac_bits(wp).sub(logs[0].mul_int(k))
    r_target = min(part.table.max_r(), _reduction_r_target(B))
    red = reduce_argument(t0, part.table, r_target, norm_limit=B)
    # recompute the residual exactly at full working precision
    tman = t0.man
    for c, lg in zip(red.coeffs, logs):
        if c:
            tman -= c * lg.man
    t = FixedPoint(tman, wp)
    s = series.sinh_reduced(t, wp)
    u = s.add(s.mul(s, wp).add(FixedPoint.from_int(1, wp)).sqrt(wp))
    frac = pow_product(part.basis.primes[1:], red.coeffs[1:])
    # fold the power of two into the fraction before the final division
    # so its truncation error lands on the result's own ulp
    e2 = k + red.coeffs[0]
    num, den = frac.num, frac.den
    if e2 >= 0:
        num <<= e2
    else:
        den <<= -e2
    return FixedPoint(_tdiv(u.man * num, den), wp).with_frac_bits(B)


def cos_sin_full(x, B, ctx=None):
    """(cos x, sin x) via Gaussian-prime angle reduction."""
    if x.is_zero():
        return FixedPoint.from_int(1, B), FixedPoint(0, B)
    if B < ATAN_CROSSOVER_BITS or ctx is None:
        return reference_cos_sin(x, B)
    _check_ctx(ctx, B)
    if abs(float(x)) > 2.0 ** 60:
        raise DomainError("trigonometric argument out of range")
    part = ctx.part("atan")
    wp = _exp_guard(x, B)
    angles = [v.with_frac_bits(wp) for v in part.values]
    k = x.nearest_int_quotient(angles[0])  # angles[0] = pi/2
    t0 = x.with_frac_bits(wp).sub(angles[0].mul_int(k))
    r_target = min(part.table.max_r(), _reduction_r_target(B))
    red = reduce_argument(t0, part.table, r_target, norm_limit=B)
    tman = t0.man
    for c, ang in zip(red.coeffs, angles):
        if c:
            tman -= c * ang.man
    t = FixedPoint(tman, wp)
    s, c = series.sin_cos_reduced(t, wp)
    g = pow_product_gaussian(part.basis.gprimes[1:], red.coeffs[1:]).num
    N = g.norm()
    # v/w = g/conj(g) = g^2 / N
    gre, gim = g.re * g.re - g.im * g.im, 2 * g.re * g.im
    cos_m = _tdiv(c.man * gre - s.man * gim, N)
    sin_m = _tdiv(c.man * gim + s.man * gre, N)
    cos_t, sin_t = _rotate_quadrant(FixedPoint(cos_m, wp),
                                    FixedPoint(sin_m, wp),
                                    k + red.coeffs[0])
    return cos_t.with_frac_bits(B), sin_t.with_frac_bits(B)


# ----------------------------------------------------------------------
# inverse functions (high-order Newton on the forward functions)

def log_full(x, B, ctx=None):
    """log(x) by Newton iteration over exp, basecase atanh series."""
    if x.sign() <= 0:
        raise DomainError("logarithm of a nonpositive value")
    wp = B + 32
    one_wp = FixedPoint.from_int(1, wp)
    if x.with_frac_bits(wp) == one_wp:
        return FixedPoint(0, B)
    if B < ATAN_CROSSOVER_BITS:
        return reference_log(x, B)
    m, e = _mantissa_frame(x.with_frac_bits(wp))
    order = ctx.newton_order if ctx is not None else DEFAULT_NEWTON_ORDER
    y = log_full(m, max(B // order, 64), ctx)
    inv = exp_full(y.neg(), wp, ctx)
    delta = m.mul(inv, wp).sub(one_wp)
    short_order = _short_order(delta, wp)
    acc = y.with_frac_bits(wp).add(series.log1p_short(delta, short_order, wp))
    if e:
        acc = acc.add(series.log2_fixed(wp).mul_int(e))
    return acc.with_frac_bits(B)


def _short_order(delta, B):
    if delta.is_zero():
        return 2
    dbits = delta.fb - delta.man.bit_length()  # |delta| < 2^-dbits+1
    return max(2, int(math.ceil((B + 8) / max(dbits - 4, 1))) + 1)


def atan_full(x, B, ctx=None):
    """atan(x) by Newton iteration over cos/sin, basecase odd series."""
    if x.is_zero():
        return FixedPoint(0, B)
    if x.sign() < 0:
        return atan_full(x.neg(), B, ctx).neg()
    wp = B + 32
    one_wp = FixedPoint.from_int(1, wp)
    xa = x.with_frac_bits(wp)
    if one_wp < xa:
        half_pi = FixedPoint(series.pi_fixed(wp).man >> 1, wp)
        return half_pi.sub(
            atan_full(one_wp.div(xa, wp), wp, ctx)).with_frac_bits(B)
    if B < ATAN_CROSSOVER_BITS:
        return reference_atan(x, B)
    y = atan_full(xa, max(B // (ctx.newton_order if ctx else
                                DEFAULT_NEWTON_ORDER), 64), ctx)
    c, s = cos_sin_full(y, wp, ctx)
    # delta = (c x - s)/(c + s x)
    num = c.mul(xa, wp).sub(s.with_frac_bits(wp))
    den = c.with_frac_bits(wp).add(s.mul(xa, wp))
    delta = num.div(den, wp)
    acc = y.with_frac_bits(wp).add(
        series.atan_short(delta, _short_order(delta, wp), wp))
    return acc.with_frac_bits(B)


def tan_full(x, B, ctx=None):
    """tan(x) = sin(x)/cos(x) with a near-pole guard."""
    wp = B + 32
    c, s = cos_sin_full(x.with_frac_bits(wp), wp, ctx)
    if c.man.bit_length() <= wp - B // 2:
        raise DomainError("tangent argument too close to a pole")
    return s.div(c, wp).with_frac_bits(B)
