"""Chow calculus for projective bundles over a curve, and the endomorphism
degree formulas that live there.

The ring is A*(C)[D]/(D^n + c1 D^(n-1) F) with F^2 = 0 and F D^(n-1) = 1,
so every class is p(D) + q(D) F with deg p, deg q < n.  Endomorphism data
enters through deg(g), delta = deg(f)/deg(g), and mu_min of the
Harder-Narasimhan type; the fiber-degree root d = delta^(1/(n-1)) is carried
as an exact real algebraic number and scalars are polynomials in d reduced
mod its defining polynomial, so the degree identity is checked exactly even
for irrational d.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import _numberfield as nf
from .errors import InvalidInput, InvariantViolation
from .exactreal import (
    Order,
    RealAlgebraicNumber,
    compare,
    kth_root,
)


# ---------------------------------------------------------------------------
# Scalars: rationals, or polynomials in the fiber-degree root d
# ---------------------------------------------------------------------------

class ScalarRing:
    """Q, or Q[d] with d a fixed real algebraic number."""

    def __init__(self, d_value=None):
        if d_value is None or isinstance(d_value, (int, Fraction)):
            self.lam = None
            self.modulus = None
            self.d_rational = None if d_value is None else Fraction(d_value)
        elif isinstance(d_value, RealAlgebraicNumber) and d_value.is_rational:
            self.lam = None
            self.modulus = None
            self.d_rational = d_value.rational_value
        else:
            self.lam = d_value
            self.modulus = d_value.poly
            self.d_rational = None

    @property
    def exact_rational(self):
        return self.lam is None

    def const(self, c):
        if self.exact_rational:
            return Fraction(c)
        return nf.elem_const(c)

    def d(self):
        if self.exact_rational:
            if self.d_rational is None:
                raise InvalidInput("ring has no distinguished d value")
            return Fraction(self.d_rational)
        return nf.reduce_mod((Fraction(0), Fraction(1)), self.modulus)

    def add(self, a, b):
        if self.exact_rational:
            return a + b
        return nf.elem_add(a, b)

    def mul(self, a, b):
        if self.exact_rational:
            return a * b
        return nf.elem_mul(a, b, self.modulus)

    def scale(self, a, c):
        if self.exact_rational:
            return a * Fraction(c)
        return nf.elem_scale(a, Fraction(c))

    def neg(self, a):
        return self.scale(a, -1)

    def is_zero(self, a):
        if self.exact_rational:
            return a == 0
        return nf.is_zero_at(a, self.lam)

    def equal(self, a, b):
        return self.is_zero(self.add(a, self.neg(b)))

    def to_float(self, a):
        if self.exact_rational:
            return float(a)
        return float(nf.value_interval(a, self.lam,
                                       Fraction(1, 10**12)).midpoint)


# ---------------------------------------------------------------------------
# Chow elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChowElement:
    """p(D) + q(D) F in A*(P_C(E)); p and q stored with deg < n."""

    ring: object            # ChowRing
    p: tuple                # scalar coefficients of D^i
    q: tuple                # scalar coefficients of D^i F

    def __repr__(self):
        terms = []
        sr = self.ring.scalars
        for i, c in enumerate(self.p):
            if not sr.is_zero(c):
                terms.append(f"{sr.to_float(c):g}*D^{i}")
        for i, c in enumerate(self.q):
            if not sr.is_zero(c):
                terms.append(f"{sr.to_float(c):g}*D^{i}F")
        return " + ".join(terms) if terms else "0"


class ChowRing:
    """A*(C)[D]/(D^n + c1 D^(n-1) F) with relations F^2 = 0, F D^(n-1) = 1."""

    def __init__(self, n, c1, d_value=None):
        if n < 2:
            raise InvalidInput("bundle rank must be >= 2")
        self.n = int(n)
        self.c1 = Fraction(c1)
        self.scalars = ScalarRing(d_value)

    def _zeros(self):
        return tuple(self.scalars.const(0) for _ in range(self.n))

    def element(self, p=None, q=None):
        sr = self.scalars
        pp = list(self._zeros())
        qq = list(self._zeros())
        for i, c in enumerate(p or []):
            if i >= self.n:
                raise InvalidInput("coefficient degree exceeds n-1")
            pp[i] = c if not isinstance(c, (int, Fraction)) else sr.const(c)
        for i, c in enumerate(q or []):
            if i >= self.n:
                raise InvalidInput("coefficient degree exceeds n-1")
            qq[i] = c if not isinstance(c, (int, Fraction)) else sr.const(c)
        return ChowElement(self, tuple(pp), tuple(qq))

    def zero(self):
        return self.element()

    def one(self):
        return self.element(p=[1])

    def D(self):
        return self.element(p=[0, 1])

    def F(self):
        return self.element(q=[1])

    def add(self, a, b):
        self._check(a, b)
        sr = self.scalars
        return ChowElement(
            self,
            tuple(sr.add(x, y) for x, y in zip(a.p, b.p)),
            tuple(sr.add(x, y) for x, y in zip(a.q, b.q)))

    def scale(self, a, c):
        sr = self.scalars
        return ChowElement(self,
                           tuple(sr.scale(x, c) for x in a.p),
                           tuple(sr.scale(x, c) for x in a.q))

    def scale_scalar(self, a, s):
        """Multiply by an arbitrary scalar-ring element."""
        sr = self.scalars
        if isinstance(s, (int, Fraction)):
            s = sr.const(s)
        return ChowElement(self,
                           tuple(sr.mul(x, s) for x in a.p),
                           tuple(sr.mul(x, s) for x in a.q))

    def _check(self, *elems):
        for e in elems:
            if e.ring is not self and (e.ring.n != self.n
                                       or e.ring.c1 != self.c1):
                raise InvalidInput("elements from mismatched Chow rings")

    def mul(self, a, b):
        """Product reduced by F^2 = 0 and D^n = -c1 D^(n-1) F (so D^n F = 0)."""
        self._check(a, b)
        sr = self.scalars
        n = self.n
        # raw polynomial products
        p_raw = [sr.const(0)] * (2 * n - 1)
        q_raw = [sr.const(0)] * (2 * n - 1)
        for i, x in enumerate(a.p):
            for j, y in enumerate(b.p):
                p_raw[i + j] = sr.add(p_raw[i + j], sr.mul(x, y))
        for i, x in enumerate(a.p):
            for j, y in enumerate(b.q):
                q_raw[i + j] = sr.add(q_raw[i + j], sr.mul(x, y))
        for i, x in enumerate(a.q):
            for j, y in enumerate(b.p):
                q_raw[i + j] = sr.add(q_raw[i + j], sr.mul(x, y))
        # reduce the D-part: D^n -> -c1 D^(n-1) F; D^(n+j) -> 0 for j >= 1
        pp = list(p_raw[:n])
        qq = list(q_raw[:n])
        if len(p_raw) > n:
            qq[n - 1] = sr.add(qq[n - 1], sr.scale(p_raw[n], -self.c1))
        return ChowElement(self, tuple(pp), tuple(qq))

    def pow(self, a, k):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def is_zero(self, a):
        sr = self.scalars
        return all(sr.is_zero(c) for c in a.p) and \
            all(sr.is_zero(c) for c in a.q)


def chow_mul(a, b):
    return a.ring.mul(a, b)


def intersection_number(a):
    """Coefficient of D^(n-1) F after full reduction.

    The input must be a top-degree cycle class: no residual p-part and the
    q-part concentrated in degree n-1.
    """
    ring = a.ring
    sr = ring.scalars
    if any(not sr.is_zero(c) for c in a.p):
        raise InvalidInput("class is not of top cycle degree")
    for i, c in enumerate(a.q[:-1]):
        if not sr.is_zero(c):
            raise InvalidInput("class is not of top cycle degree")
    val = a.q[-1]
    if sr.exact_rational and val == int(val):
        return int(val)
    return val


# ---------------------------------------------------------------------------
# Harder-Narasimhan types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HNType:
    """Graded pieces (rank_i, degree_i) with strictly decreasing slopes."""

    pieces: tuple

    @staticmethod
    def of(pieces):
        out = tuple((int(r), int(d)) for r, d in pieces)
        if not out or any(r < 1 for r, _ in out):
            raise InvalidInput("graded pieces need positive ranks")
        slopes = [Fraction(d, r) for r, d in out]
        if any(a <= b for a, b in zip(slopes, slopes[1:])):
            raise InvalidInput("slopes must strictly decrease")
        return HNType(out)

    @property
    def total_rank(self):
        return sum(r for r, _ in self.pieces)

    @property
    def total_degree(self):
        return sum(d for _, d in self.pieces)

    @property
    def mu_max(self):
        r, d = self.pieces[0]
        return Fraction(d, r)

    @property
    def mu_min(self):
        r, d = self.pieces[-1]
        return Fraction(d, r)

    @property
    def mu(self):
        return Fraction(self.total_degree, self.total_rank)

    @property
    def semistable(self):
        return len(self.pieces) == 1


@dataclass(frozen=True)
class SlopeStats:
    mu_min: Fraction
    mu_max: Fraction
    mu: Fraction
    semistable: bool

    def __iter__(self):
        return iter((self.mu_min, self.mu_max, self.mu, self.semistable))


def slope_stats(hn):
    """Slope summary; the strict sandwich mu_max > mu > mu_min must hold for
    every non-semistable type."""
    stats = SlopeStats(hn.mu_min, hn.mu_max, hn.mu, hn.semistable)
    if not hn.semistable:
        if not (stats.mu_max > stats.mu > stats.mu_min):
            raise InvariantViolation(
                "HN slopes violate the strict min/max sandwich")
    return stats


def nef_generators(hn):
    """Nef cone generators (F, D - mu_min F) of the projectivized bundle."""
    if hn.total_rank < 2:
        raise InvalidInput("projectivization needs bundle rank >= 2")
    ring = ChowRing(hn.total_rank, hn.total_degree)
    f = ring.F()
    d_class = ring.element(p=[0, 1], q=[-hn.mu_min])
    return f, d_class


# ---------------------------------------------------------------------------
# Endomorphism data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BundleEndoData:
    """Bundle rank n, base degree deg(g), delta = deg(f)/deg(g), mu_min."""

    n: int
    deg_g: int
    delta: Fraction
    mu_min: Fraction
    d: RealAlgebraicNumber

    @staticmethod
    def of(n, deg_g, delta, mu_min):
        n = int(n)
        deg_g = int(deg_g)
        delta = Fraction(delta)
        if n < 2:
            raise InvalidInput("bundle rank must be >= 2")
        if deg_g < 1:
            raise InvalidInput("base degree must be a positive integer")
        if delta <= 0:
            raise InvalidInput("delta must be positive")
        d = kth_root(delta, n - 1)
        return BundleEndoData(n, deg_g, delta, Fraction(mu_min), d)

    @property
    def deg_f(self):
        return self.delta * self.deg_g

    def ring(self, c1=None):
        return ChowRing(self.n, self.mu_min * self.n if c1 is None else c1,
                        self.d)


@dataclass(frozen=True)
class PullbackActionReport:
    matrix: tuple                    # 2x2 scalars, basis (F, D)
    eigenvalue_base: Fraction        # deg(g), eigenvector F
    eigenvalue_fiber: RealAlgebraicNumber   # d, eigenvector D - mu_min F
    lambda1: RealAlgebraicNumber


def pullback_action(data):
    """f*(F) = deg(g) F and f*(D) = (deg(g) - d) mu_min F + d D, with
    lambda1 = max(deg(g), d) decided exactly."""
    ring = ChowRing(data.n, 0, data.d)
    sr = ring.scalars
    d_scalar = sr.d()
    c_scalar = sr.scale(sr.add(sr.const(data.deg_g), sr.neg(d_scalar)),
                        data.mu_min)
    matrix = ((sr.const(data.deg_g), c_scalar),
              (sr.const(0), d_scalar))
    deg_g_ran = RealAlgebraicNumber.from_rational(data.deg_g)
    lam = deg_g_ran if compare(deg_g_ran, data.d) != Order.Less else data.d
    return PullbackActionReport(matrix, Fraction(data.deg_g), data.d, lam)


def chow_pullback(data, elem, c1):
    """Ring action: D -> (deg g - d) mu_min F + d D, F -> deg g F."""
    ring = ChowRing(data.n, c1, data.d)
    sr = ring.scalars
    d_scalar = sr.d()
    c_scalar = sr.scale(sr.add(sr.const(data.deg_g), sr.neg(d_scalar)),
                        data.mu_min)
    f_image = ring.scale(ring.F(), data.deg_g)
    d_image = ChowRing.add(ring, ring.element(q=[c_scalar]),
                           ring.element(p=[sr.const(0), d_scalar]))
    out = ring.zero()
    for i, coeff in enumerate(elem.p):
        term = ring.scale_scalar(ring.pow(d_image, i), coeff)
        out = ring.add(out, term)
    for i, coeff in enumerate(elem.q):
        term = ring.mul(ring.scale_scalar(ring.pow(d_image, i), coeff),
                        f_image)
        out = ring.add(out, term)
    return out, ring


def degree_identity_check(data, c1=0):
    """deg(f) two ways: delta * deg(g), and the Chow-ring intersection
    number of f*F . (f*D)^(n-1); they must agree exactly."""
    ring = ChowRing(data.n, c1, data.d)
    elem_f = ring.F()
    f_star_f, _ = chow_pullback(data, elem_f, c1)
    f_star_d, _ = chow_pullback(data, ring.D(), c1)
    product = f_star_f
    for _ in range(data.n - 1):
        product = ring.mul(product, f_star_d)
    val = intersection_number(product)
    sr = ring.scalars
    if isinstance(val, (int, Fraction)):
        return Fraction(val) == data.deg_f
    return sr.equal(val, sr.const(data.deg_f))


def dichotomy_classify(data, c1):
    """Either the base controls lambda1 or the slopes balance.

    d^n (c1 + n mu_min) = deg(f) (c1 + n mu_min): a nonzero second factor
    forces d = deg(g); a zero one means mu_min = -mu.
    """
    key = Fraction(c1) + data.n * data.mu_min
    if key != 0:
        return "ForcedBaseEquality"
    d_eq_base = compare(data.d, RealAlgebraicNumber.from_rational(
        data.deg_g)) == Order.Equal
    return "Both" if d_eq_base else "SlopeBalanced"
