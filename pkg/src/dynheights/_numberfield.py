"""Arithmetic with polynomial expressions in a fixed real algebraic number.

An eigenvector for an eigenvalue lam of an integer matrix M has coordinates
that are integer polynomials in lam (adjugate cofactors of M - t*I), so all
downstream quantities -- intersection products, isotropy values, facet
pairings -- are residues q(lam) with q rational.  This module evaluates the
sign of such residues exactly: zero is decided by a gcd common-root test
against lam's defining polynomial, and nonzero signs by interval refinement,
which terminates precisely because the zero case was already excluded.
"""

import math
from fractions import Fraction

from .errors import InvariantViolation
from .exactreal import (
    IntPolynomial,
    RationalInterval,
    RealAlgebraicNumber,
    _fdivmod,
    count_roots_halfopen,
    poly_eval_interval,
    poly_gcd,
)


def reduce_mod(coeffs, modulus):
    """Residue of a Fraction-coefficient polynomial mod an IntPolynomial."""
    return tuple(_fdivmod(list(coeffs), [Fraction(c) for c in modulus.coeffs])[1])


def elem_from_int_poly(p, modulus):
    return reduce_mod([Fraction(c) for c in p.coeffs], modulus)


def elem_const(c):
    c = Fraction(c)
    return (c,) if c else ()


def elem_add(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def elem_scale(a, c):
    c = Fraction(c)
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def elem_mul(a, b, modulus):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return reduce_mod(out, modulus)


def _signed_int_poly(coeffs):
    """Clear denominators by a positive rational, preserving the sign."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return IntPolynomial.of([])
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return IntPolynomial.of([c // g for c in ints])


def is_zero_at(coeffs, lam):
    """Exact test of q(lam) == 0 for a residue q."""
    p = _signed_int_poly(coeffs)
    if p.is_zero:
        return True
    if p.degree == 0:
        return False
    g = poly_gcd(p, lam.poly)
    if g.is_zero or g.degree == 0:
        return False
    if g(lam.lo) == 0:
        return True
    return count_roots_halfopen(g, lam.lo, lam.hi) >= 1


def value_sign(coeffs, lam):
    """Exact sign of q(lam): -1, 0, or +1."""
    if is_zero_at(coeffs, lam):
        return 0
    p = _signed_int_poly(coeffs)
    x = lam
    while True:
        box = poly_eval_interval(p, x.interval)
        if box.strictly_positive():
            return 1
        if box.strictly_negative():
            return -1
        x = x._bisect_once()


def _frac_eval_interval(coeffs, interval):
    acc = RationalInterval.point(0)
    for c in reversed(coeffs):
        acc = acc * interval + c
    return acc


def _frac_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def value_interval(coeffs, lam, eps):
    """Enclosure of q(lam) of width <= eps; evaluates q itself, unscaled."""
    eps = Fraction(eps)
    if not coeffs:
        return RationalInterval.point(0)
    x = lam
    box = _frac_eval_interval(coeffs, x.interval)
    while box.width > eps:
        if x.is_rational:
            return RationalInterval.point(_frac_eval(coeffs, x.lo))
        x = x._bisect_once()
        box = _frac_eval_interval(coeffs, x.interval)
    return box


def common_field(vec_polys_a, lam_a, vec_polys_b, lam_b):
    """Rewrite two coordinate vectors over one defining polynomial.

    Only possible when the two algebraic numbers are equal; the shared
    defining polynomial is the gcd, which still vanishes at the common root.
    Returns (lam over the gcd, coords_a, coords_b) or None.
    """
    from .exactreal import Order, compare

    if compare(lam_a, lam_b) != Order.Equal:
        return None
    g = poly_gcd(lam_a.poly, lam_b.poly)
    if g.is_zero or g.degree == 0:
        raise InvariantViolation("equal numbers must share a defining factor")
    lam = RealAlgebraicNumber.make(g, lam_a.lo, lam_a.hi, validate=False)
    a = [reduce_mod(c, g) for c in vec_polys_a]
    b = [reduce_mod(c, g) for c in vec_polys_b]
    return lam, a, b
