"""Exact arithmetic for real algebraic numbers.

A real algebraic number is stored as a squarefree integer polynomial plus a
rational isolating interval containing exactly one of its real roots.  Root
isolation and counting run on Sturm sequences; refinement is plain bisection
with exact sign evaluation; equality is decided by a gcd common-factor test,
never by tolerance.  All interval endpoints are Fractions with unbounded
denominators, so every enclosure is sound by construction.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2

from . import _linalg
from .errors import DomainError, InvalidInput, InvariantViolation


class Order:
    """Trichotomy result of an exact comparison."""
    Less = "Less"
    Equal = "Equal"
    Greater = "Greater"


# ---------------------------------------------------------------------------
# Integer polynomials, dense, constant term first
# ---------------------------------------------------------------------------

def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; coeffs[i] multiplies t**i."""

    coeffs: tuple

    @staticmethod
    def of(coeffs):
        return IntPolynomial(_strip(int(c) for c in coeffs))

    @staticmethod
    def constant(c):
        return IntPolynomial.of([c])

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        if self.is_zero:
            raise InvalidInput("zero polynomial has no degree")
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if self.is_zero:
            raise InvalidInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return IntPolynomial.of(
            i * c for i, c in enumerate(self.coeffs) if i > 0)

    def neg(self):
        return IntPolynomial.of(-c for c in self.coeffs)

    def add(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPolynomial.of(x + y for x, y in zip(a, b))

    def sub(self, other):
        return self.add(other.neg())

    def mul(self, other):
        if self.is_zero or other.is_zero:
            return IntPolynomial.of([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial.of(out)

    def scale(self, c):
        return IntPolynomial.of(x * c for x in self.coeffs)

    def reflect(self):
        """p(-t)."""
        return IntPolynomial.of(
            c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def compose_power(self, k):
        """p(t**k)."""
        if k < 1:
            raise InvalidInput("power must be positive")
        if self.is_zero:
            return self
        out = [0] * (self.degree * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPolynomial.of(out)

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gmpy2.gcd(g, c)
        return int(g)

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial.of(c // g for c in self.coeffs)

    def divexact(self, other):
        """Exact quotient self / other; raises if division is not exact."""
        q, r = _fdivmod(_to_frac(self), _to_frac(other))
        if any(c != 0 for c in r):
            raise InvalidInput("division is not exact")
        return _from_frac(q)


# Fraction-coefficient helpers (ascending lists), private to this module.

def _to_frac(p):
    return [Fraction(c) for c in p.coeffs]


def _from_frac(coeffs):
    """Clear denominators and primitivize to an IntPolynomial."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return IntPolynomial.of([])
    den = 1
    for c in coeffs:
        den = den * c.denominator // gmpy2.gcd(den, c.denominator)
    return IntPolynomial.of(c * den for c in coeffs).primitive()


def _fstrip(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _fdivmod(a, b):
    a = list(a)
    b = _fstrip(list(b))
    if not b:
        raise InvalidInput("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while _fstrip(a) and len(a) >= len(b):
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
    return q, _fstrip(a)


def _feval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_gcd(p, q):
    """Primitive gcd in Z[t], positive leading coefficient."""
    a, b = _to_frac(p), _to_frac(q)
    while _fstrip(list(b)):
        a, b = b, _fdivmod(a, b)[1]
    g = _from_frac(a)
    if g.is_zero:
        return g
    return g.primitive()


def squarefree_part(p):
    """p / gcd(p, p'), primitive with positive leading coefficient."""
    if p.is_zero:
        raise InvalidInput("zero polynomial")
    if p.degree == 0:
        return IntPolynomial.of([1])
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p.primitive()
    return p.divexact(g).primitive()


@lru_cache(maxsize=4096)
def _sturm_chain(coeffs):
    """Sturm chain of a squarefree polynomial, as Fraction tuples."""
    f0 = [Fraction(c) for c in coeffs]
    f1 = [Fraction(i * c) for i, c in enumerate(coeffs) if i > 0]
    chain = [tuple(f0), tuple(f1)]
    a, b = f0, f1
    while _fstrip(list(b)) and len(b) > 1:
        r = _fdivmod(a, b)[1]
        r = [-c for c in r]
        if not r:
            break
        chain.append(tuple(r))
        a, b = b, r
    return tuple(chain)


def _sign(x):
    return (x > 0) - (x < 0)


def _variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain, x):
    return _variations([_sign(_feval(list(f), x)) for f in chain])


def _variations_at_inf(chain, positive):
    signs = []
    for f in chain:
        f = _fstrip(list(f))
        if not f:
            signs.append(0)
            continue
        s = _sign(f[-1])
        if not positive and (len(f) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_roots_halfopen(sf, a, b):
    """Number of real roots of the squarefree polynomial sf in (a, b]."""
    chain = _sturm_chain(sf.coeffs)
    return _variations_at(chain, a) - _variations_at(chain, b)


def count_real_roots(sf):
    chain = _sturm_chain(sf.coeffs)
    return _variations_at_inf(chain, False) - _variations_at_inf(chain, True)


def cauchy_root_bound(p):
    """Strict bound B with every real root in (-B, B)."""
    lead = abs(p.leading)
    biggest = max(abs(c) for c in p.coeffs)
    return Fraction(1) + Fraction(biggest, lead)


# ---------------------------------------------------------------------------
# Rational intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise InvalidInput("interval endpoints out of order")

    @staticmethod
    def point(x):
        x = Fraction(x)
        return RationalInterval(x, x)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def contains(self, x):
        return self.lo <= x <= self.hi

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def strictly_positive(self):
        return self.lo > 0

    def strictly_negative(self):
        return self.hi < 0

    def intersects(self, other):
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other):
        if not self.intersects(other):
            return None
        return RationalInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def hull(self, other):
        return RationalInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def __add__(self, other):
        other = _coerce(other)
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        products = [self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi]
        return RationalInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self):
        if self.contains_zero():
            raise DomainError("interval contains zero; cannot invert")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return _coerce(other) * self.reciprocal()

    def pow_int(self, k):
        if k < 0:
            return self.reciprocal().pow_int(-k)
        if k == 0:
            return RationalInterval.point(1)
        out = RationalInterval.point(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def max_with(self, x):
        """Interval of max(value, x) over the interval, x a rational."""
        x = Fraction(x)
        return RationalInterval(max(self.lo, x), max(self.hi, x))

    def widened(self, pad):
        pad = Fraction(pad)
        return RationalInterval(self.lo - pad, self.hi + pad)

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def _coerce(x):
    if isinstance(x, RationalInterval):
        return x
    return RationalInterval.point(x)


def poly_eval_interval(p, interval):
    """Sound enclosure of p over the interval, by interval Horner."""
    acc = RationalInterval.point(0)
    for c in reversed(p.coeffs):
        acc = acc * interval + c
    return acc


# ---------------------------------------------------------------------------
# Real algebraic numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealAlgebraicNumber:
    """Exact real root of an integer polynomial.

    `poly` is squarefree, primitive, with positive leading coefficient, and
    has exactly one real root in the closed interval [lo, hi].  If the root
    is rational the interval is the degenerate [root, root].
    """

    poly: IntPolynomial
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))

    @staticmethod
    def make(poly, lo, hi, validate=True):
        """Normalize and (optionally) check the one-root invariant."""
        poly = squarefree_part(poly)
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise InvalidInput("interval endpoints out of order")
        if poly.degree == 1:
            root = Fraction(-poly.coeffs[0], poly.coeffs[1])
            if not lo <= root <= hi:
                raise InvalidInput("interval does not contain the root")
            return RealAlgebraicNumber(poly, root, root)
        if poly(lo) == 0:
            return RealAlgebraicNumber(poly, lo, lo)
        if poly(hi) == 0:
            return RealAlgebraicNumber(poly, hi, hi)
        if validate and count_roots_halfopen(poly, lo, hi) != 1:
            raise InvalidInput("interval does not isolate exactly one root")
        return RealAlgebraicNumber(poly, lo, hi)

    @staticmethod
    def from_rational(q):
        q = Fraction(q)
        poly = IntPolynomial.of([-q.numerator, q.denominator])
        return RealAlgebraicNumber(poly, q, q)

    @property
    def interval(self):
        return RationalInterval(self.lo, self.hi)

    @property
    def is_rational(self):
        return self.lo == self.hi

    @property
    def rational_value(self):
        if not self.is_rational:
            raise InvalidInput("value is not certified rational")
        return self.lo

    def _bisect_once(self):
        if self.is_rational:
            return self
        m = (self.lo + self.hi) / 2
        pm = self.poly(m)
        if pm == 0:
            return RealAlgebraicNumber(self.poly, m, m)
        if _sign(self.poly(self.lo)) != _sign(pm):
            return RealAlgebraicNumber(self.poly, self.lo, m)
        return RealAlgebraicNumber(self.poly, m, self.hi)

    def refined(self, eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise InvalidInput("eps must be positive")
        x = self
        while x.hi - x.lo > eps:
            x = x._bisect_once()
        return x

    def sign(self):
        if self.poly(Fraction(0)) == 0 and self.lo <= 0 <= self.hi:
            return 0
        x = self
        while x.lo <= 0 <= x.hi:
            x = x._bisect_once()
        return 1 if x.lo > 0 else -1

    def negated(self):
        return RealAlgebraicNumber(
            self.poly.reflect().primitive(), -self.hi, -self.lo)

    def abs(self):
        return self if self.sign() >= 0 else self.negated()

    def to_float(self):
        x = self.refined(Fraction(1, 10**20))
        return float((x.lo + x.hi) / 2)

    def __repr__(self):
        return (f"RealAlgebraicNumber({list(self.poly.coeffs)}, "
                f"[{self.lo}, {self.hi}]~{self.to_float():.6g})")


def isolate_real_roots(p):
    """All real roots of p, ascending, with pairwise disjoint intervals."""
    if not isinstance(p, IntPolynomial):
        p = IntPolynomial.of(p)
    if p.is_zero:
        raise InvalidInput("cannot isolate roots of the zero polynomial")
    sf = squarefree_part(p)
    if sf.degree == 0:
        return []
    if sf.degree == 1:
        root = Fraction(-sf.coeffs[0], sf.coeffs[1])
        return [RealAlgebraicNumber(sf, root, root)]
    bound = cauchy_root_bound(sf)
    found = []

    def emit_exact(r):
        found.append(RealAlgebraicNumber(sf, r, r))

    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        cnt = count_roots_halfopen(sf, lo, hi)
        if cnt == 0:
            continue
        if cnt == 1 and sf(hi) != 0:
            found.append(RealAlgebraicNumber(sf, lo, hi))
            continue
        m = (lo + hi) / 2
        if sf(m) == 0:
            emit_exact(m)
            delta = (hi - lo) / 4
            while (sf(m - delta) == 0 or sf(m + delta) == 0
                   or count_roots_halfopen(sf, m - delta, m) != 1
                   or count_roots_halfopen(sf, m, m + delta) != 0):
                delta /= 2
            stack.append((lo, m - delta))
            stack.append((m + delta, hi))
        else:
            stack.append((lo, m))
            stack.append((m, hi))

    # Shrink until isolating intervals are pairwise disjoint.
    changed = True
    while changed:
        changed = False
        for i in range(len(found)):
            for j in range(i + 1, len(found)):
                a, b = found[i], found[j]
                if a.lo <= b.hi and b.lo <= a.hi and not (
                        a.is_rational and b.is_rational and a.lo == b.lo):
                    found[i] = a._bisect_once()
                    found[j] = b._bisect_once()
                    changed = True
    found.sort(key=lambda r: (r.lo, r.hi))
    return found


def refine(x, eps):
    """Interval of width <= eps around x's root, inside the current one."""
    return x.refined(eps).interval


def compare(x, y):
    """Exact trichotomy for two real algebraic numbers."""
    a, b = x, y
    while True:
        if a.hi < b.lo:
            return Order.Less
        if b.hi < a.lo:
            return Order.Greater
        overlap_lo = max(a.lo, b.lo)
        overlap_hi = min(a.hi, b.hi)
        g = poly_gcd(a.poly, b.poly)
        if not g.is_zero and g.degree >= 1:
            inside = count_roots_halfopen(g, overlap_lo, overlap_hi)
            if g(overlap_lo) == 0:
                inside += 1
            if inside >= 1:
                return Order.Equal
        if a.is_rational and b.is_rational:
            if a.lo == b.lo:
                return Order.Equal
            return Order.Less if a.lo < b.lo else Order.Greater
        a = a._bisect_once()
        b = b._bisect_once()


def compare_with_rational(x, q):
    return compare(x, RealAlgebraicNumber.from_rational(q))


def max_ran(values):
    values = list(values)
    if not values:
        raise InvalidInput("empty maximum")
    best = values[0]
    for v in values[1:]:
        if compare(v, best) == Order.Greater:
            best = v
    return best


def _rational_kth_root_exact(q, k):
    """(root, exact) with root**k == q when exact, else None."""
    num, den = q.numerator, q.denominator
    rn, en = gmpy2.iroot(gmpy2.mpz(num), k)
    rd, ed = gmpy2.iroot(gmpy2.mpz(den), k)
    if en and ed:
        return Fraction(int(rn), int(rd))
    return None


def kth_root(x, k):
    """Positive real k-th root of a positive rational or algebraic number."""
    if not isinstance(k, int) or k < 1:
        raise InvalidInput("k must be a positive integer")
    if isinstance(x, (int, Fraction)):
        q = Fraction(x)
        if q <= 0:
            raise DomainError("k-th root requires a positive argument")
        if k == 1:
            return RealAlgebraicNumber.from_rational(q)
        exact = _rational_kth_root_exact(q, k)
        if exact is not None:
            return RealAlgebraicNumber.from_rational(exact)
        poly = IntPolynomial.of(
            [-q.numerator] + [0] * (k - 1) + [q.denominator])
        roots = [r for r in isolate_real_roots(poly) if r.sign() > 0]
        if len(roots) != 1:
            raise InvariantViolation("expected a unique positive k-th root")
        return roots[0]
    if x.sign() <= 0:
        raise DomainError("k-th root requires a positive argument")
    if x.is_rational:
        return kth_root(x.rational_value, k)
    if k == 1:
        return x
    target = x.refined(Fraction(1, 2**16))
    poly = squarefree_part(target.poly.compose_power(k))
    candidates = [r for r in isolate_real_roots(poly) if r.sign() > 0]
    while True:
        live = [r for r in candidates
                if r.interval.pow_int(k).intersects(target.interval)]
        if len(live) == 1:
            return live[0]
        if not live:
            raise InvariantViolation("k-th root candidate set became empty")
        target = target._bisect_once()
        candidates = [r._bisect_once() for r in live]


def pow_ran(x, k):
    """x**k for a nonnegative integer k, as a real algebraic number."""
    if not isinstance(k, int) or k < 0:
        raise InvalidInput("exponent must be a nonnegative integer")
    if k == 0:
        return RealAlgebraicNumber.from_rational(1)
    if k == 1:
        return x
    if x.is_rational:
        return RealAlgebraicNumber.from_rational(x.rational_value ** k)
    # Roots of charpoly(C^k) are the k-th powers of the roots of x.poly,
    # where C is the companion matrix of x.poly.
    d = x.poly.degree
    lead = Fraction(x.poly.leading)
    comp = [[Fraction(0)] * d for _ in range(d)]
    for i in range(1, d):
        comp[i][i - 1] = Fraction(1)
    for i in range(d):
        comp[i][d - 1] = -Fraction(x.poly.coeffs[i]) / lead
    powered = _linalg.mat_pow(comp, k)
    cp = _linalg.charpoly(powered)
    poly = squarefree_part(_from_frac([Fraction(c) for c in cp]))
    target = x.refined(Fraction(1, 2**16))
    candidates = isolate_real_roots(poly)
    while True:
        ti = target.interval.pow_int(k)
        live = [r for r in candidates if r.interval.intersects(ti)]
        if len(live) == 1:
            return live[0]
        if not live:
            raise InvariantViolation("power candidate set became empty")
        target = target._bisect_once()
        candidates = [r._bisect_once() for r in live]
