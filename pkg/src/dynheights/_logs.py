"""Guaranteed rational enclosures of natural logarithms.

Decimal.ln() is correctly rounded, so a computed value padded by a few ulps
is a sound enclosure.  Logs of huge integers are reduced to a mantissa small
enough for Decimal plus an exact multiple of an ln(2) enclosure, keeping the
cost independent of the operand's bit length.
"""

import decimal
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .exactreal import RationalInterval

DEFAULT_LOG_DIGITS = 13  # interval width <= 10^-13 < the 1e-12 default target


def _ulp_pad(d, prec):
    """Fraction bound on a few ulps of Decimal d at context precision prec."""
    exponent = d.adjusted() - prec + 1
    return 4 * Fraction(10) ** exponent


@lru_cache(maxsize=None)
def _ln_small_int(n, digits):
    """Enclosure of ln(n) for 1 <= n fitting comfortably in a Decimal."""
    if n == 1:
        return RationalInterval.point(0)
    ctx = decimal.Context(prec=digits + 12)
    val = ctx.ln(decimal.Decimal(int(n)))
    pad = _ulp_pad(val, ctx.prec)
    center = Fraction(val)
    return RationalInterval(center - pad, center + pad)


@lru_cache(maxsize=None)
def ln2_interval(digits=DEFAULT_LOG_DIGITS):
    return _ln_small_int(2, digits)


def ln_int_interval(n, digits=DEFAULT_LOG_DIGITS):
    """Sound enclosure of ln(n) for a positive integer of any size."""
    n = int(n)
    if n <= 0:
        raise DomainError("logarithm of a non-positive integer")
    bits = n.bit_length()
    # Mantissa wide enough that ln(m+1)-ln(m) ~ 1/m stays below 10^-digits.
    mant_bits = max(64, int(digits * 3.33) + 4)
    if bits <= mant_bits:
        return _ln_small_int(n, digits)
    shift = bits - mant_bits
    m = n >> shift
    low = _ln_small_int(m, digits)
    high = _ln_small_int(m + 1, digits)
    k_ln2 = ln2_interval(digits) * shift
    return RationalInterval(low.lo + k_ln2.lo, high.hi + k_ln2.hi)


def ln_fraction_interval(q, digits=DEFAULT_LOG_DIGITS):
    """Sound enclosure of ln(q) for a positive rational q."""
    q = Fraction(q)
    if q <= 0:
        raise DomainError("logarithm of a non-positive rational")
    return (ln_int_interval(q.numerator, digits)
            - ln_int_interval(q.denominator, digits))
