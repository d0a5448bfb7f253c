"""Concrete dynamical systems with exact rational iteration.

Four system families: coordinate power maps on P^n, monomial maps on the
torus of (P^1)^n, Wehler-type (2,2,2) surface automorphisms in (P^1)^3
driven by words in the three Vieta involutions, and products acting
factor-wise.  Monomial and power orbits are tracked in factored form
(exponent vectors), since their coordinates would have ~lambda^n bits;
Wehler orbits have no such shortcut and carry exact gmpy2 integers under a
configurable bit cap.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from . import _linalg
from ._factored import FactoredRational
from ._logs import DEFAULT_LOG_DIGITS, ln_int_interval
from .errors import (
    DegenerateFiber,
    DomainError,
    InvalidInput,
    PreconditionError,
    ResourceLimit,
)
from .heights import ExactHeight, MultiProjPoint, h_plus, normalize_tuple
from .lattice import PullbackMap, block_product

DEFAULT_COORD_CAP_BITS = 10**6


# ---------------------------------------------------------------------------
# Vieta involutions and Wehler systems
# ---------------------------------------------------------------------------

def vieta_other_root(a, b, c, current):
    """Conjugate root of a z^2 + b z w + c w^2 given one root [u:v].

    Product formula first, sum formula as fallback; if both degenerate the
    fiber itself is degenerate and iteration must stop rather than guess.
    """
    u, v = current
    if u == 0 and v == 0:
        raise InvalidInput("projective root cannot be [0:0]")
    if a * u * u + b * u * v + c * v * v != 0:
        raise PreconditionError("[u:v] is not a root of the fiber quadratic")
    prod = (c * v, a * u)
    if prod != (0, 0):
        return normalize_tuple(prod)
    total = (-b * v - a * u, a * v)
    if total != (0, 0):
        return normalize_tuple(total)
    raise DegenerateFiber("both Vieta formulas vanish on this fiber")


# Classical pullback matrices of the three involutions on (D1, D2, D3),
# machine-checked below: each is an involution and a gram isometry.
WEHLER_INVOLUTION_MATRICES = (
    ((-1, 0, 0), (2, 1, 0), (2, 0, 1)),
    ((1, 2, 0), (0, -1, 0), (0, 2, 1)),
    ((1, 0, 2), (0, 1, 2), (0, 0, -1)),
)
WEHLER_GRAM = ((0, 2, 2), (2, 0, 2), (2, 2, 0))


def _check_wehler_matrices():
    gram = [list(r) for r in WEHLER_GRAM]
    for m in WEHLER_INVOLUTION_MATRICES:
        m = [list(r) for r in m]
        if _linalg.mat_mul(m, m) != _linalg.identity(3):
            raise InvalidInput("involution matrix fails M^2 = I")
        mt = _linalg.transpose(m)
        if _linalg.mat_mul(_linalg.mat_mul(mt, gram), m) != gram:
            raise InvalidInput("involution matrix fails the gram isometry")


_check_wehler_matrices()


class WehlerSystem:
    """(2,2,2) hypersurface in (P^1)^3 with a word in the Vieta involutions.

    coeffs[i][j][k] multiplies x0^(2-i) x1^i * y0^(2-j) y1^j * z0^(2-k) z1^k.
    The word lists involutions in order of application; sigma_i exchanges the
    two solutions in the i-th coordinate.
    """

    kind = "wehler"

    def __init__(self, coeffs, word):
        self.coeffs = tuple(tuple(tuple(int(c) for c in row) for row in plane)
                            for plane in coeffs)
        if len(self.coeffs) != 3 or any(len(p) != 3 for p in self.coeffs) \
                or any(len(r) != 3 for p in self.coeffs for r in p):
            raise InvalidInput("coefficients must form a 3x3x3 array")
        word = tuple(int(w) for w in word)
        if not word or any(w not in (1, 2, 3) for w in word):
            raise InvalidInput("word must be a nonempty sequence over {1,2,3}")
        self.word = word

    @property
    def num_basis_factors(self):
        return 3

    @property
    def is_invertible(self):
        return True

    def inverse_system(self):
        return WehlerSystem(self.coeffs, tuple(reversed(self.word)))

    def form_value(self, point):
        x, y, z = point.coords
        xm = (x[0] * x[0], x[0] * x[1], x[1] * x[1])
        ym = (y[0] * y[0], y[0] * y[1], y[1] * y[1])
        zm = (z[0] * z[0], z[0] * z[1], z[1] * z[1])
        total = 0
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    c = self.coeffs[i][j][k]
                    if c:
                        total += c * xm[i] * ym[j] * zm[k]
        return total

    def on_surface(self, point):
        if any(len(t) != 2 for t in point.coords):
            raise InvalidInput("Wehler points live in (P^1)^3")
        return self.form_value(point) == 0

    def _fiber_quadratic(self, point, axis):
        """Coefficients (A, B, C) of the quadratic in the `axis` coordinate."""
        monos = []
        for idx, t in enumerate(point.coords):
            if idx == axis:
                monos.append(None)
            else:
                monos.append((t[0] * t[0], t[0] * t[1], t[1] * t[1]))
        out = [0, 0, 0]
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    c = self.coeffs[i][j][k]
                    if not c:
                        continue
                    pos = (i, j, k)[axis]
                    others = [(i, j, k)[t] for t in range(3) if t != axis]
                    term = c
                    for mono, o in zip((m for m in monos if m is not None),
                                       others):
                        term *= mono[o]
                    out[pos] += term
        return tuple(out)

    def apply_involution(self, point, which):
        axis = which - 1
        a, b, c = self._fiber_quadratic(point, axis)
        u, v = point.coords[axis]
        new_pair = vieta_other_root(gmpy2.mpz(a), gmpy2.mpz(b), gmpy2.mpz(c),
                                    (gmpy2.mpz(u), gmpy2.mpz(v)))
        coords = list(point.coords)
        coords[axis] = new_pair
        return MultiProjPoint(tuple(coords))

    def apply(self, point):
        if not self.on_surface(point):
            raise DomainError("point does not lie on the (2,2,2) surface")
        for w in self.word:
            point = self.apply_involution(point, w)
        return point

    def point_heights(self, point, digits=DEFAULT_LOG_DIGITS):
        houses = []
        logs = []
        for t in point.coords:
            h = max(abs(t[0]), abs(t[1]))
            houses.append(int(h))
            logs.append(ln_int_interval(h, digits))
        return ExactHeight(tuple(houses), tuple(logs))

    def max_coord_bits(self, point):
        return max(int(gmpy2.mpz(c).bit_length())
                   for t in point.coords for c in t)

    def pullback_matrix(self):
        mats = [[list(r) for r in WEHLER_INVOLUTION_MATRICES[w - 1]]
                for w in self.word]
        out = _linalg.identity(3)
        for m in mats:
            out = _linalg.mat_mul(out, m)
        return PullbackMap.of(out, 1, True)

    def parse_point(self, data):
        return MultiProjPoint.of(*[tuple(t) for t in data])

    def point_repr(self, point):
        return point.as_lists()


def on_surface_check(system, point):
    """Exact vanishing of the trihomogeneous form at the point."""
    return system.on_surface(point)


# ---------------------------------------------------------------------------
# Power systems on P^n
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerPoint:
    """x_i^(d^k) for a normalized base point; exponent tracked, not the ints."""

    base: MultiProjPoint
    exp: int = 1

    def materialize(self, cap_bits=DEFAULT_COORD_CAP_BITS):
        house_bits = max(abs(c).bit_length()
                         for c in self.base.coords[0]) * self.exp
        if house_bits > cap_bits:
            raise ResourceLimit(
                f"materializing needs ~{house_bits} bits per coordinate")
        return MultiProjPoint.of(tuple(int(c) ** self.exp
                                       for c in self.base.coords[0]))


class PowerSystem:
    """Coordinate-wise x -> x^d on P^n; a degree d^n morphism."""

    kind = "power"

    def __init__(self, degree, dim):
        if degree < 2:
            raise InvalidInput("power degree must be >= 2")
        if dim < 1:
            raise InvalidInput("ambient dimension must be >= 1")
        self.degree = int(degree)
        self.dim = int(dim)

    @property
    def num_basis_factors(self):
        return 1

    @property
    def is_invertible(self):
        return False

    def to_power_point(self, point):
        if isinstance(point, PowerPoint):
            return point
        if point.num_factors != 1 or len(point.coords[0]) != self.dim + 1:
            raise DomainError("point does not live in the system's P^n")
        return PowerPoint(point, 1)

    def apply(self, point):
        p = self.to_power_point(point)
        return PowerPoint(p.base, p.exp * self.degree)

    def point_heights(self, point, digits=DEFAULT_LOG_DIGITS):
        p = self.to_power_point(point)
        house = max(abs(int(c)) for c in p.base.coords[0])
        log = ln_int_interval(house, digits) * p.exp
        if house == 1 or house.bit_length() * p.exp <= 4096:
            house_val = house ** p.exp
        else:
            house_val = None
        return ExactHeight((house_val,), (log,))

    def max_coord_bits(self, point):
        return 1  # exponent representation never materializes coordinates

    def pullback_matrix(self):
        return PullbackMap.of([[self.degree]], self.degree ** self.dim, False)

    def parse_point(self, data):
        return MultiProjPoint.of(tuple(data[0]) if isinstance(data[0],
                                                              (list, tuple))
                                 else tuple(data))

    def point_repr(self, point):
        p = self.to_power_point(point)
        return {"base": p.base.as_lists(), "power": p.exp}


# ---------------------------------------------------------------------------
# Monomial systems on the torus of (P^1)^n
# ---------------------------------------------------------------------------

class MonomialSystem:
    """x_i -> prod_j x_j^(A_ij) on the torus (coordinates all nonzero)."""

    kind = "monomial"

    def __init__(self, exponent_matrix):
        rows = [list(map(int, row)) for row in exponent_matrix]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidInput("exponent matrix must be square")
        d = _linalg.det(rows)
        if d == 0:
            raise InvalidInput("exponent matrix must be nonsingular")
        self.matrix = rows
        self.det = d

    @property
    def dim(self):
        return len(self.matrix)

    @property
    def num_basis_factors(self):
        return self.dim

    @property
    def is_invertible(self):
        return self.det in (1, -1)

    def inverse_system(self):
        if not self.is_invertible:
            raise PreconditionError("monomial map is not invertible over Z")
        return MonomialSystem(_linalg.inverse_unimodular(self.matrix))

    def to_torus_point(self, point):
        if isinstance(point, tuple) and all(
                isinstance(c, FactoredRational) for c in point):
            return point
        if isinstance(point, MultiProjPoint):
            values = []
            for t in point.coords:
                if len(t) != 2 or t[1] == 0 or t[0] == 0:
                    raise DomainError("monomial systems act on torus points")
                values.append(Fraction(int(t[0]), int(t[1])))
            return tuple(FactoredRational.from_fraction(v) for v in values)
        values = [Fraction(v) for v in point]
        if any(v == 0 for v in values):
            raise DomainError("monomial systems act on torus points")
        return tuple(FactoredRational.from_fraction(v) for v in values)

    def apply(self, point):
        pt = self.to_torus_point(point)
        if len(pt) != self.dim:
            raise DomainError("point dimension mismatch")
        out = []
        for row in self.matrix:
            acc = FactoredRational(1, {})
            for e, x in zip(row, pt):
                if e:
                    acc = acc.mul(x.pow_int(e))
            out.append(acc)
        return tuple(out)

    def point_heights(self, point, digits=DEFAULT_LOG_DIGITS):
        pt = self.to_torus_point(point)
        houses = []
        logs = []
        for x in pt:
            log = x.ln_house(digits)
            logs.append(log)
            houses.append(None if x.approx_bits() > 4096 else
                          max(abs(x.to_fraction().numerator),
                              x.to_fraction().denominator))
        return ExactHeight(tuple(houses), tuple(logs))

    def max_coord_bits(self, point):
        return 1  # factored representation

    def pullback_matrix(self):
        return PullbackMap.of(self.matrix, abs(self.det), False)

    def parse_point(self, data):
        return self.to_torus_point([Fraction(str(v)) for v in data])

    def point_repr(self, point):
        pt = self.to_torus_point(point)
        out = []
        for x in pt:
            if x.approx_bits() <= 4096:
                q = x.to_fraction()
                out.append(str(q))
            else:
                out.append(repr(x))
        return out


# ---------------------------------------------------------------------------
# Product systems
# ---------------------------------------------------------------------------

class ProductSystem:
    """Factor-wise action on Y x Z; projection to the left factor is the
    invariant fibration."""

    kind = "product"

    def __init__(self, left, right):
        self.left = left
        self.right = right

    @property
    def num_basis_factors(self):
        return self.left.num_basis_factors + self.right.num_basis_factors

    @property
    def is_invertible(self):
        return self.left.is_invertible and self.right.is_invertible

    def inverse_system(self):
        return ProductSystem(self.left.inverse_system(),
                             self.right.inverse_system())

    def apply(self, point):
        lp, rp = point
        return (self.left.apply(lp), self.right.apply(rp))

    def point_heights(self, point, digits=DEFAULT_LOG_DIGITS):
        lh = self.left.point_heights(point[0], digits)
        rh = self.right.point_heights(point[1], digits)
        return ExactHeight(lh.houses + rh.houses, lh.logs + rh.logs)

    def max_coord_bits(self, point):
        return max(self.left.max_coord_bits(point[0]),
                   self.right.max_coord_bits(point[1]))

    def pullback_matrix(self):
        return block_product(self.left.pullback_matrix(),
                             self.right.pullback_matrix())

    def project_base(self, point):
        return point[0]

    def parse_point(self, data):
        return (self.left.parse_point(data[0]),
                self.right.parse_point(data[1]))

    def point_repr(self, point):
        return [self.left.point_repr(point[0]),
                self.right.point_repr(point[1])]


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitEntry:
    n: int
    point: object
    heights: ExactHeight
    class_heights: dict = field(default_factory=dict)
    class_h_plus: dict = field(default_factory=dict)


@dataclass
class OrbitRecord:
    entries: list
    complete: bool = True
    abort_reason: str = None

    def __len__(self):
        return len(self.entries)

    def entry(self, n):
        for e in self.entries:
            if e.n == n:
                return e
        raise InvalidInput(f"orbit record has no entry for n={n}")

    @property
    def last(self):
        return self.entries[-1]


def apply_system(system, point):
    return system.apply(point)


def iterate_orbit(system, point, steps, divisor_classes=None,
                  digits=DEFAULT_LOG_DIGITS,
                  coord_cap_bits=DEFAULT_COORD_CAP_BITS):
    """Forward orbit record for n = 0..steps with exact per-iterate heights.

    A degenerate fiber stops the record early (partial record returned); a
    coordinate exceeding the bit cap raises ResourceLimit carrying the
    partial record, since heights grow like lambda^n by design.
    """
    if steps < 0:
        raise InvalidInput("orbit length must be nonnegative")
    divisor_classes = divisor_classes or {}
    for label, weights in divisor_classes.items():
        if len(weights) != system.num_basis_factors:
            raise InvalidInput(f"class {label!r} has wrong weight length")
    entries = []
    current = point
    for n in range(steps + 1):
        heights = system.point_heights(current, digits)
        class_heights = {}
        class_hp = {}
        for label, weights in divisor_classes.items():
            val = heights.weighted(tuple(weights))
            class_heights[label] = val
            class_hp[label] = h_plus(val)
        entries.append(OrbitEntry(n, current, heights, class_heights,
                                  class_hp))
        if n == steps:
            break
        try:
            current = system.apply(current)
        except DegenerateFiber as exc:
            return OrbitRecord(entries, complete=False,
                               abort_reason=f"degenerate_fiber: {exc}")
        bits = system.max_coord_bits(current)
        if bits > coord_cap_bits:
            raise ResourceLimit(
                f"coordinate bit size {bits} exceeds cap {coord_cap_bits}",
                partial=OrbitRecord(entries, complete=False,
                                    abort_reason="resource_limit"))
    return OrbitRecord(entries, complete=True)


def pullback_matrix(system):
    return system.pullback_matrix()
