"""Factored rational numbers for torus and power-map orbits.

Monomial maps act linearly on exponent vectors, so an orbit point is stored
as sign * prod(p**e) over a fixed prime support.  Heights then come from
exponents times cached log-prime enclosures: the materialized integers would
have ~lambda^n bits, the exponents only ~n*log(lambda).
"""

from fractions import Fraction

from ._logs import DEFAULT_LOG_DIGITS, ln_int_interval
from .errors import DomainError, InvalidInput
from .exactreal import RationalInterval


def factorize(n):
    """Trial-division factorization of a nonzero int into {prime: exponent}.

    Orbit seeds are tiny, so trial division is enough; a residual cofactor
    bigger than the trial bound is rejected rather than silently mislabeled.
    """
    n = abs(int(n))
    if n == 0:
        raise InvalidInput("cannot factor zero")
    out = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        if n > 10**12:
            raise InvalidInput("seed coordinate is not smooth enough to factor")
        out[n] = out.get(n, 0) + 1
    return out


class FactoredRational:
    """Nonzero rational as sign * prod(p**e); exponents may be negative."""

    __slots__ = ("sign", "exps")

    def __init__(self, sign, exps):
        if sign not in (1, -1):
            raise InvalidInput("sign must be +-1")
        self.sign = sign
        self.exps = {p: e for p, e in exps.items() if e != 0}

    @staticmethod
    def from_fraction(q):
        q = Fraction(q)
        if q == 0:
            raise DomainError("factored representation is for nonzero values")
        exps = factorize(q.numerator if q.numerator else 1)
        for p, e in factorize(q.denominator).items():
            exps[p] = exps.get(p, 0) - e
        return FactoredRational(1 if q > 0 else -1, exps)

    def to_fraction(self):
        num, den = 1, 1
        for p, e in self.exps.items():
            if e > 0:
                num *= p ** e
            else:
                den *= p ** (-e)
        return Fraction(self.sign * num, den)

    @property
    def is_one(self):
        return self.sign == 1 and not self.exps

    def mul(self, other):
        exps = dict(self.exps)
        for p, e in other.exps.items():
            exps[p] = exps.get(p, 0) + e
        return FactoredRational(self.sign * other.sign, exps)

    def pow_int(self, k):
        if k == 0:
            return FactoredRational(1, {})
        sign = self.sign if k % 2 else 1
        return FactoredRational(sign, {p: e * k for p, e in self.exps.items()})

    def ln_abs(self, digits=DEFAULT_LOG_DIGITS):
        total = RationalInterval.point(0)
        for p, e in sorted(self.exps.items()):
            total = total + ln_int_interval(p, digits) * e
        return total

    def ln_house(self, digits=DEFAULT_LOG_DIGITS):
        """ln max(|num|, |den|) of the lowest-terms representation."""
        num = RationalInterval.point(0)
        den = RationalInterval.point(0)
        for p, e in sorted(self.exps.items()):
            lp = ln_int_interval(p, digits)
            if e > 0:
                num = num + lp * e
            else:
                den = den + lp * (-e)
        return RationalInterval(max(num.lo, den.lo), max(num.hi, den.hi))

    def approx_bits(self):
        """Rough bit size of the materialized numerator+denominator."""
        return sum(abs(e) * p.bit_length() for p, e in self.exps.items())

    def __eq__(self, other):
        return (isinstance(other, FactoredRational)
                and self.sign == other.sign and self.exps == other.exps)

    def __hash__(self):
        return hash((self.sign, tuple(sorted(self.exps.items()))))

    def __repr__(self):
        if not self.exps:
            return str(self.sign)
        body = "*".join(f"{p}^{e}" for p, e in sorted(self.exps.items()))
        return ("-" if self.sign < 0 else "") + body
