"""
Binary fixed-point arithmetic on arbitrary-precision integers.

A value is stored as ``mantissa / 2**frac_bits`` with an arbitrary-precision
signed mantissa.  All rounding is truncation toward zero on the mantissa,
which keeps every derived operation within 1 ulp of the exact result at the
stated number of fractional bits.  There is no exponent field: callers are
expected to keep magnitudes in a known range (arguments are reduced below 1
before any series evaluation).

Values are immutable; operations are pure functions.
"""

import math

from gmpy2 import mpz

__all__ = ["FixedPoint", "isqrt_newton"]


def _shift(man, k):
    """Multiply a mantissa by 2**k, truncating toward zero for k < 0."""
    if k >= 0:
        return man << k
    k = -k
    if man >= 0:
        return man >> k
    return -((-man) >> k)


def _tdiv(a, b):
    """Truncating (toward zero) integer division."""
    q = abs(a) // abs(b)
    return -q if (a < 0) != (b < 0) else q


def isqrt_newton(n):
    """Floor square root by Newton iteration with precision doubling."""
    n = mpz(n)
    if n < 0:
        raise ValueError("square root of negative number")
    if n == 0:
        return mpz(0)
    bl = n.bit_length()
    if bl <= 50:
        x = mpz(int(math.sqrt(n)))
        while x * x > n:
            x -= 1
        while (x + 1) * (x + 1) <= n:
            x += 1
        return x
    # Seed with the root of the top half of the bits, then one Newton step
    # doubles the accuracy to full width.
    k = bl // 4
    x = isqrt_newton(n >> (2 * k)) << k
    x = (x + n // x) >> 1
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


class FixedPoint:
    """Real number mantissa/2**frac_bits with explicit precision control."""

    __slots__ = ("man", "fb")

    def __init__(self, man, fb):
        if fb < 0:
            raise ValueError("frac_bits must be nonnegative")
        self.man = mpz(man)
        self.fb = int(fb)

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def from_int(cls, k, fb):
        return cls(mpz(k) << fb, fb)

    @classmethod
    def from_rational(cls, p, q, fb):
        """p/q truncated toward zero at fb fractional bits."""
        if q == 0:
            raise ZeroDivisionError("zero denominator")
        if q < 0:
            p, q = -p, -q
        return cls(_tdiv(mpz(p) << fb, mpz(q)), fb)

    @classmethod
    def from_float(cls, x, fb):
        p, q = float(x).as_integer_ratio()
        return cls.from_rational(p, q, fb)

    @classmethod
    def from_decimal(cls, s, fb):
        """Parse a plain decimal literal ('-12.375', '0.5', '3')."""
        s = s.strip()
        neg = s.startswith("-")
        if s and s[0] in "+-":
            s = s[1:]
        if not s or s.count(".") > 1:
            raise ValueError("malformed decimal literal: %r" % (s,))
        if "." in s:
            ipart, fpart = s.split(".")
        else:
            ipart, fpart = s, ""
        digits = ipart + fpart
        if not digits.isdigit():
            raise ValueError("malformed decimal literal: %r" % (s,))
        num = mpz(digits)
        den = mpz(10) ** len(fpart)
        # round to nearest (ties away from zero) for faithful decimal input
        man = (2 * (num << fb) + den) // (2 * den)
        return cls(-man if neg else man, fb)

    # ------------------------------------------------------------------
    # precision / predicates

    def with_frac_bits(self, fb):
        if fb == self.fb:
            return self
        return FixedPoint(_shift(self.man, fb - self.fb), fb)

    def is_zero(self):
        return self.man == 0

    def sign(self):
        if self.man > 0:
            return 1
        if self.man < 0:
            return -1
        return 0

    def __bool__(self):
        return self.man != 0

    def __float__(self):
        fb = self.fb
        bl = self.man.bit_length()
        # avoid overflow in the conversion of huge mantissas
        if bl > 900:
            drop = bl - 900
            return math.ldexp(float(self.man >> drop if self.man >= 0
                                    else -((-self.man) >> drop)), drop - fb)
        return math.ldexp(float(self.man), -fb)

    # ------------------------------------------------------------------
    # arithmetic

    def _align(self, other):
        fb = max(self.fb, other.fb)
        return self.with_frac_bits(fb), other.with_frac_bits(fb), fb

    def add(self, other):
        a, b, fb = self._align(other)
        return FixedPoint(a.man + b.man, fb)

    def sub(self, other):
        a, b, fb = self._align(other)
        return FixedPoint(a.man - b.man, fb)

    def neg(self):
        return FixedPoint(-self.man, self.fb)

    def abs(self):
        return FixedPoint(abs(self.man), self.fb)

    def mul(self, other, out_fb=None):
        if out_fb is None:
            out_fb = max(self.fb, other.fb)
        return FixedPoint(
            _shift(self.man * other.man, out_fb - self.fb - other.fb), out_fb)

    def mul_int(self, k):
        return FixedPoint(self.man * mpz(k), self.fb)

    def div(self, other, out_fb=None):
        if other.man == 0:
            raise ZeroDivisionError("fixed-point division by zero")
        if out_fb is None:
            out_fb = max(self.fb, other.fb)
        shift = out_fb + other.fb - self.fb
        man = _shift(self.man, shift) if shift >= 0 else self.man
        q = _tdiv(man, other.man)
        if shift < 0:
            q = _shift(q, shift)
        return FixedPoint(q, out_fb)

    def div_int(self, k, out_fb=None):
        if k == 0:
            raise ZeroDivisionError("fixed-point division by zero")
        if out_fb is None:
            out_fb = self.fb
        return FixedPoint(_tdiv(_shift(self.man, out_fb - self.fb), mpz(k)),
                          out_fb)

    def sqrt(self, out_fb=None):
        if self.man < 0:
            raise ValueError("square root of negative value")
        if out_fb is None:
            out_fb = self.fb
        shift = 2 * out_fb - self.fb
        if shift >= 0:
            return FixedPoint(isqrt_newton(self.man << shift), out_fb)
        return FixedPoint(isqrt_newton(self.man >> (-shift)), out_fb)

    def nearest_int_quotient(self, e):
        """floor(self/e + 1/2), computed exactly on the scaled mantissas."""
        if e.man == 0:
            raise ZeroDivisionError("nearest_int_quotient by zero")
        a, b, _ = self._align(e)
        x, y = a.man, b.man
        if y < 0:
            x, y = -x, -y
        return int((2 * x + y) // (2 * y))

    def shift(self, k):
        """Multiply by 2**k (exact for k >= 0, 1 ulp truncation otherwise)."""
        return FixedPoint(_shift(self.man, k), self.fb)

    # ------------------------------------------------------------------
    # comparisons (by value)

    def cmp(self, other):
        a, b, _ = self._align(other)
        if a.man < b.man:
            return -1
        if a.man > b.man:
            return 1
        return 0

    def __eq__(self, other):
        return isinstance(other, FixedPoint) and self.cmp(other) == 0

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    __hash__ = None

    # ------------------------------------------------------------------
    # output

    def to_decimal(self, digits):
        """Round-to-nearest decimal string with `digits` fractional digits."""
        if digits < 1:
            raise ValueError("digits must be >= 1")
        if self.man == 0:
            return "0"
        scaled = abs(self.man) * mpz(10) ** digits
        q = (2 * scaled + (mpz(1) << self.fb)) >> (self.fb + 1)
        ipart, fpart = divmod(q, mpz(10) ** digits)
        s = "%d.%s" % (ipart, str(fpart).zfill(digits))
        return "-" + s if self.man < 0 else s

    def to_scientific(self, sig=20):
        """Scientific-notation decimal string with `sig` significant digits."""
        if self.man == 0:
            return "0"
        absman = abs(self.man)
        # first exponent guess from bit counts, then correct by comparison
        e10 = math.floor((absman.bit_length() - self.fb) * 0.30102999566398114)
        for _ in range(3):
            k = sig - 1 - e10
            if k >= 0:
                d = (2 * absman * mpz(10) ** k + (mpz(1) << self.fb)) \
                    >> (self.fb + 1)
            else:
                den = mpz(10) ** (-k) << self.fb
                d = (2 * absman + den) // (2 * den)
            if d >= mpz(10) ** sig:
                e10 += 1
            elif d < mpz(10) ** (sig - 1):
                e10 -= 1
            else:
                break
        s = str(d)
        body = "%s.%se%+03d" % (s[0], s[1:], e10)
        return "-" + body if self.man < 0 else body

    def to_hex(self):
        """Golden-file dump: sign, hex mantissa, frac_bits."""
        sign = "-" if self.man < 0 else "+"
        return "%s%x:%d" % (sign, abs(self.man), self.fb)

    @classmethod
    def from_hex(cls, s):
        sign = 1
        if s[0] in "+-":
            if s[0] == "-":
                sign = -1
            s = s[1:]
        manhex, fb = s.split(":")
        return cls(sign * mpz(manhex, 16), int(fb))

    def __repr__(self):
        return "FixedPoint(%s, fb=%d)" % (float(self), self.fb)
