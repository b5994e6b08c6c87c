"""
Exact rational and Gaussian-rational power products.

Products of prime powers are assembled with binary splitting over the
prime list and binary exponentiation for the individual powers.  The
factors are pairwise coprime, so numerators and denominators are coprime
by construction and no GCDs are ever computed on the evaluation path.
"""

from gmpy2 import mpz

__all__ = [
    "BigRational", "GaussianInt", "GaussianRational",
    "pow_product", "pow_product_gaussian", "apply_i_power",
]


class BigRational:
    """num/den with den > 0; coprimality is maintained by construction."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = mpz(num), mpz(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    def mul(self, other):
        return BigRational(self.num * other.num, self.den * other.den)

    def __eq__(self, other):
        return (isinstance(other, BigRational)
                and self.num * other.den == other.num * self.den)

    def __repr__(self):
        return "BigRational(%s/%s)" % (self.num, self.den)


class GaussianInt:
    """Gaussian integer re + im*i."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = mpz(re)
        self.im = mpz(im)

    def mul(self, other):
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    def conj(self):
        return GaussianInt(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def pow(self, e):
        if e < 0:
            raise ValueError("negative exponent on a Gaussian integer")
        result = GaussianInt(1)
        base = self
        while e:
            if e & 1:
                result = result.mul(base)
            base = base.mul(base)
            e >>= 1
        return result

    def is_unit(self):
        return abs(self.re) + abs(self.im) == 1

    def __eq__(self, other):
        return (isinstance(other, GaussianInt)
                and self.re == other.re and self.im == other.im)

    def __repr__(self):
        return "GaussianInt(%s, %s)" % (self.re, self.im)


class GaussianRational:
    """num/den in Q(i); den is kept as the conjugate of num on the main path."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if den.re == 0 and den.im == 0:
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    def __repr__(self):
        return "GaussianRational(%r / %r)" % (self.num, self.den)


def pow_product(primes, exps):
    """Exact product p_i^(e_i) as a BigRational.

    Positive exponents multiply into the numerator, negative into the
    denominator.  Binary splitting halves the prime list recursively.
    """
    if len(primes) != len(exps):
        raise ValueError("primes and exps must have equal length")

    def rec(lo, hi):
        if hi - lo == 0:
            return mpz(1), mpz(1)
        if hi - lo == 1:
            p, e = mpz(primes[lo]), exps[lo]
            if e >= 0:
                return p ** e, mpz(1)
            return mpz(1), p ** (-e)
        mid = (lo + hi) // 2
        n1, d1 = rec(lo, mid)
        n2, d2 = rec(mid, hi)
        return n1 * n2, d1 * d2

    num, den = rec(0, len(primes))
    return BigRational(num, den)


def pow_product_gaussian(gprimes, exps):
    """Product (a_j + b_j i)^(c_j) / (a_j - b_j i)^(c_j) over Q(i).

    Only the numerator is accumulated by multiplication; the denominator
    is its complex conjugate.  A negative exponent flips the factor to
    the conjugate prime, which preserves the conjugate-pair structure.
    """
    if len(gprimes) != len(exps):
        raise ValueError("gprimes and exps must have equal length")

    def rec(lo, hi):
        if hi - lo == 0:
            return GaussianInt(1)
        if hi - lo == 1:
            a, b = gprimes[lo]
            e = exps[lo]
            base = GaussianInt(a, b) if e >= 0 else GaussianInt(a, -b)
            return base.pow(abs(e))
        mid = (lo + hi) // 2
        return rec(lo, mid).mul(rec(mid, hi))

    num = rec(0, len(gprimes))
    return GaussianRational(num, num.conj())


_I_ROT = {
    0: lambda z: z,
    1: lambda z: GaussianInt(-z.im, z.re),
    2: lambda z: GaussianInt(-z.re, -z.im),
    3: lambda z: GaussianInt(z.im, -z.re),
}


def apply_i_power(z, c):
    """Multiply by i^c using coordinate swaps and negations only."""
    rot = _I_ROT[c % 4]
    return GaussianRational(rot(z.num), z.den)
