"""Weil height machine on products of projective spaces over the rationals.

Points carry primitive integer coordinates (per-factor gcd 1, first nonzero
coordinate positive), so the standard max-norm representative is canonical
and per-factor heights are exact integers H_i; only the final log evaluation
introduces an interval, with guaranteed enclosure.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from ._logs import DEFAULT_LOG_DIGITS, ln_int_interval
from .errors import InvalidInput
from .exactreal import RationalInterval


@dataclass(frozen=True)
class MultiProjSpace:
    """P^{n_1} x ... x P^{n_k}; factor_dims are the projective dimensions."""

    factor_dims: tuple

    def __post_init__(self):
        dims = tuple(int(n) for n in self.factor_dims)
        object.__setattr__(self, "factor_dims", dims)
        if len(dims) < 1 or any(n < 1 for n in dims):
            raise InvalidInput("need at least one factor of dimension >= 1")

    @property
    def num_factors(self):
        return len(self.factor_dims)


def normalize_tuple(coords):
    """Primitive representative: gcd 1, first nonzero coordinate positive."""
    coords = list(coords)
    if all(c == 0 for c in coords):
        raise InvalidInput("projective coordinates cannot all vanish")
    g = 0
    for c in coords:
        g = gmpy2.gcd(g, c)
    first = next(c for c in coords if c != 0)
    if first < 0:
        g = -g
    return tuple(c // g for c in coords)


@dataclass(frozen=True)
class MultiProjPoint:
    """Point of a product of projective spaces, one coordinate tuple per factor."""

    coords: tuple

    @staticmethod
    def of(*factor_tuples):
        return MultiProjPoint(tuple(normalize_tuple(t) for t in factor_tuples))

    @property
    def num_factors(self):
        return len(self.coords)

    def space(self):
        return MultiProjSpace(tuple(len(t) - 1 for t in self.coords))

    def project(self, indices):
        """Image under projection onto the chosen factors."""
        return MultiProjPoint(tuple(self.coords[i] for i in indices))

    def as_lists(self):
        return [[int(c) for c in t] for t in self.coords]

    def __repr__(self):
        parts = ("[" + ":".join(str(int(c)) for c in t) + "]"
                 for t in self.coords)
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class ExactHeight:
    """Per-factor houses H_i >= 1 and enclosures of h_i = log H_i."""

    houses: tuple
    logs: tuple

    def total(self):
        out = RationalInterval.point(0)
        for log in self.logs:
            out = out + log
        return out

    def weighted(self, coeffs):
        if len(coeffs) != len(self.logs):
            raise InvalidInput("weight vector length mismatch")
        out = RationalInterval.point(0)
        for a, log in zip(coeffs, self.logs):
            out = out + log * a
        return out


def factor_heights(point, digits=DEFAULT_LOG_DIGITS):
    """Exact per-factor heights of a normalized point."""
    houses = []
    logs = []
    for t in point.coords:
        h = max(abs(c) for c in t)
        houses.append(h)
        logs.append(ln_int_interval(h, digits))
    return ExactHeight(tuple(houses), tuple(logs))


def divisor_height(point_or_height, coeffs, digits=DEFAULT_LOG_DIGITS):
    """Height for the class sum_i a_i H_i; weights may be enclosures."""
    if isinstance(point_or_height, MultiProjPoint):
        height = factor_heights(point_or_height, digits)
    else:
        height = point_or_height
    return height.weighted(tuple(coeffs))


def h_plus(value):
    """max(value, 1) with interval semantics."""
    if isinstance(value, RationalInterval):
        return value.max_with(1)
    return RationalInterval.point(max(Fraction(value), Fraction(1)))


def _normalized_tuples(dim, bound):
    """All primitive representatives in P^dim with every |coord| <= bound."""
    for raw in itertools.product(range(-bound, bound + 1), repeat=dim + 1):
        if all(c == 0 for c in raw):
            continue
        first = next(c for c in raw if c != 0)
        if first < 0:
            continue
        g = 0
        for c in raw:
            g = gmpy2.gcd(g, c)
        if g != 1:
            continue
        yield tuple(raw)


def enumerate_bounded_points(space, bound):
    """Stream the finitely many points with every house coordinate <= bound.

    Deterministic lexicographic order; the Northcott-style counts for small
    bounds are checked against brute force in the tests.
    """
    if bound < 1:
        raise InvalidInput("house bound must be >= 1")
    per_factor = [list(_normalized_tuples(n, bound))
                  for n in space.factor_dims]
    for combo in itertools.product(*per_factor):
        yield MultiProjPoint(tuple(combo))
