"""Pullback dynamics on a Neron-Severi lattice model.

A dynamical system enters as an integer matrix acting on a fixed basis of
divisor classes, together with the top intersection form and optionally a
rational polyhedral cone standing in for the nef cone.  Spectral radii are
exact real algebraic numbers; leading eigenvectors are exact (adjugate
cofactors of M - t*I evaluated at the eigenvalue) and exposed as certified
enclosures.  Intersection products of eigenvectors are decided exactly when
both eigenvalues generate the same field, which covers every automorphism
satisfying the lambda(f) = lambda(f^-1) condition.
"""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _linalg, _numberfield as nf
from .errors import InvalidInput, InvariantViolation, PreconditionError
from .exactreal import (
    IntPolynomial,
    Order,
    RationalInterval,
    RealAlgebraicNumber,
    compare,
    compare_with_rational,
    isolate_real_roots,
    max_ran,
    pow_ran,
)

DEFAULT_EIGEN_EPS = Fraction(1, 10**8)


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DivisorClass:
    """Vector of coordinates in the fixed basis; entries are Fractions or
    RationalInterval enclosures."""

    coords: tuple

    @property
    def basis_dim(self):
        return len(self.coords)

    def as_intervals(self):
        return tuple(c if isinstance(c, RationalInterval)
                     else RationalInterval.point(c) for c in self.coords)


class TopIntersectionForm:
    """Symmetric d-linear form given by its values on basis multisets."""

    def __init__(self, dim_x, basis_dim, values):
        if dim_x < 1:
            raise InvalidInput("dim_x must be >= 1")
        self.dim_x = dim_x
        self.basis_dim = basis_dim
        self.values = {}
        for idx, v in values.items():
            idx = tuple(sorted(idx))
            if len(idx) != dim_x or any(not 0 <= i < basis_dim for i in idx):
                raise InvalidInput(f"bad index tuple {idx}")
            v = Fraction(v)
            if idx in self.values and self.values[idx] != v:
                raise InvalidInput(f"conflicting values for {idx}")
            self.values[idx] = v

    def value(self, idx):
        return self.values.get(tuple(sorted(idx)), Fraction(0))

    @staticmethod
    def from_gram(gram):
        """The d = 2 case: the form is the gram matrix itself."""
        n = len(gram)
        vals = {}
        for i in range(n):
            for j in range(i, n):
                if gram[i][j] != gram[j][i]:
                    raise InvalidInput("gram matrix must be symmetric")
                vals[(i, j)] = Fraction(gram[i][j])
        return TopIntersectionForm(2, n, vals)

    def evaluate(self, vectors):
        """Multilinear evaluation; exact for Fraction inputs, enclosure for
        interval inputs."""
        if len(vectors) != self.dim_x:
            raise InvalidInput("form arity mismatch")
        interval_mode = any(isinstance(c, RationalInterval)
                            for v in vectors for c in v)
        total = RationalInterval.point(0) if interval_mode else Fraction(0)
        for idx in itertools.product(range(self.basis_dim),
                                     repeat=self.dim_x):
            coeff = self.value(idx)
            if coeff == 0:
                continue
            term = coeff
            for v, i in zip(vectors, idx):
                term = term * v[i] if not isinstance(v[i], RationalInterval) \
                    else v[i] * term
            total = total + term
        return total

    def evaluate_ring(self, vectors, modulus):
        """Multilinear evaluation with number-ring coordinates."""
        if len(vectors) != self.dim_x:
            raise InvalidInput("form arity mismatch")
        total = nf.elem_const(0)
        for idx in itertools.product(range(self.basis_dim),
                                     repeat=self.dim_x):
            coeff = self.value(idx)
            if coeff == 0:
                continue
            term = nf.elem_const(coeff)
            for v, i in zip(vectors, idx):
                term = nf.elem_mul(term, v[i], modulus)
            total = nf.elem_add(total, term)
        return total


@dataclass(frozen=True)
class PullbackMap:
    """Integer matrix action of f* on the basis of N^1."""

    matrix: tuple
    mapping_degree: int = 1
    is_automorphism: bool = False

    @staticmethod
    def of(matrix, mapping_degree=1, is_automorphism=False):
        rows = tuple(tuple(int(c) for c in row) for row in matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidInput("pullback matrix must be square")
        if mapping_degree < 1:
            raise InvalidInput("mapping degree must be positive")
        if is_automorphism:
            d = _linalg.det([list(r) for r in rows])
            if d not in (1, -1):
                raise InvalidInput(
                    "automorphism pullback must be unimodular, det=%s" % d)
        return PullbackMap(rows, mapping_degree, is_automorphism)

    @property
    def rank(self):
        return len(self.matrix)

    def rows(self):
        return [list(r) for r in self.matrix]

    def apply(self, vec):
        return _linalg.mat_vec(self.rows(), list(vec))

    def inverse(self):
        if not self.is_automorphism:
            raise PreconditionError("only automorphisms have integer inverses")
        inv = _linalg.inverse_unimodular(self.rows())
        return PullbackMap.of(inv, 1, True)


@dataclass(frozen=True)
class RationalCone:
    """Pointed cone generated by finitely many rational vectors."""

    generators: tuple

    @staticmethod
    def of(generators):
        gens = tuple(tuple(Fraction(c) for c in g) for g in generators)
        if not gens:
            raise InvalidInput("cone needs at least one generator")
        dim = len(gens[0])
        if any(len(g) != dim for g in gens):
            raise InvalidInput("generator dimension mismatch")
        if any(all(c == 0 for c in g) for g in gens):
            raise InvalidInput("zero vector is not a valid generator")
        cone = RationalCone(gens)
        if not cone._is_pointed():
            raise InvalidInput("cone is not pointed")
        return cone

    @property
    def dim(self):
        return len(self.generators[0])

    def _span_data(self):
        return _cone_span_data(self.generators)

    def _facets(self):
        return _cone_facets(self.generators)

    def _is_pointed(self):
        basis, _ = self._span_data()
        s = len(basis)
        if s == 0:
            return False
        if s == 1:
            b = basis[0]
            j = next(i for i, c in enumerate(b) if c != 0)
            return all((g[j] / b[j]) > 0 for g in self.generators)
        candidates = []
        facets = self._facets()
        if facets:
            total = [sum(h[i] for h in facets) for i in range(self.dim)]
            candidates.append(total)
        candidates.extend(list(g) for g in self.generators)
        candidates.append([sum(g[i] for g in self.generators)
                           for i in range(self.dim)])
        for w in candidates:
            if all(_dot(w, g) > 0 for g in self.generators):
                return True
        return False

    def contains(self, vec):
        """Exact membership for a rational vector."""
        vec = [Fraction(c) for c in vec]
        basis, complement = self._span_data()
        for w in complement:
            if _dot(w, vec) != 0:
                return False
        for h in self._facets():
            if _dot(h, vec) < 0:
                return False
        if not self._facets():
            # single ray
            b = basis[0]
            j = next(i for i, c in enumerate(b) if c != 0)
            t = vec[j] / b[j]
            return t >= 0 and all(vec[i] == t * b[i] for i in range(self.dim))
        return True

    def maps_into(self, pullback):
        """Exact check that the matrix maps every generator into the cone."""
        return all(self.contains(pullback.apply(g)) for g in self.generators)


def _dot(a, b):
    return sum(Fraction(x) * Fraction(y) for x, y in zip(a, b))


@lru_cache(maxsize=256)
def _cone_span_data(gens):
    rows = [list(g) for g in gens]
    basis = []
    for g in rows:
        if _linalg.rank(basis + [g]) > len(basis):
            basis.append(g)
    complement = _linalg.nullspace(basis) if basis else []
    return tuple(tuple(b) for b in basis), tuple(tuple(c) for c in complement)


@lru_cache(maxsize=256)
def _cone_facets(gens):
    """Supporting hyperplanes through (s-1)-subsets of generators, oriented
    nonnegatively on the cone; complete facet list for pointed cones."""
    basis, complement = _cone_span_data(gens)
    s = len(basis)
    if s <= 1:
        return tuple()
    normals = set()
    for subset in itertools.combinations(range(len(gens)), s - 1):
        rows = [list(gens[i]) for i in subset] + [list(c) for c in complement]
        kern = _linalg.nullspace(rows)
        if len(kern) != 1:
            continue
        h = kern[0]
        dots = [_dot(h, g) for g in gens]
        if all(d >= 0 for d in dots):
            pass
        elif all(d <= 0 for d in dots):
            h = [-c for c in h]
        else:
            continue
        den = 1
        for c in h:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in h]
        g0 = 0
        for c in ints:
            g0 = math.gcd(g0, c)
        normals.add(tuple(Fraction(c, g0) for c in ints))
    return tuple(sorted(normals))


# ---------------------------------------------------------------------------
# Exact eigenvectors
# ---------------------------------------------------------------------------

class ExactEigenvector:
    """Eigenvector with coordinates q_i(lam), q_i rational polynomials."""

    def __init__(self, lam, coords):
        self.lam = lam            # RealAlgebraicNumber
        self.coords = coords      # tuple of residues mod lam.poly

    def sign_flip(self):
        return ExactEigenvector(
            self.lam, tuple(nf.elem_scale(c, -1) for c in self.coords))

    def enclosures(self, eps):
        return [nf.value_interval(c, self.lam, eps) for c in self.coords]

    def normalized_enclosures(self, eps):
        """Coordinates divided by the largest one, widths <= eps."""
        eps = Fraction(eps)
        work = eps
        while True:
            boxes = self.enclosures(work)
            mags = [max(abs(b.lo), abs(b.hi)) for b in boxes]
            pivot = mags.index(max(mags))
            if boxes[pivot].contains_zero():
                work /= 2
                continue
            out = [b / boxes[pivot] for b in boxes]
            if all(o.width <= eps for o in out):
                return out, pivot
            work /= 2


def _poly_matrix_minor_det(entries, rows, cols):
    """Determinant of the submatrix with given rows/cols of IntPolynomials."""
    if not rows:
        return IntPolynomial.of([1])
    r0 = rows[0]
    total = IntPolynomial.of([])
    for k, c in enumerate(cols):
        e = entries[r0][c]
        if e.is_zero:
            continue
        minor = _poly_matrix_minor_det(entries, rows[1:],
                                       cols[:k] + cols[k + 1:])
        term = e.mul(minor)
        if k % 2 == 1:
            term = term.neg()
        total = total.add(term)
    return total


def _adjugate_column(matrix, col):
    """Column `col` of adj(M - t*I) as IntPolynomials in t."""
    n = len(matrix)
    entries = [[IntPolynomial.of([matrix[i][j], -1] if i == j
                                 else [matrix[i][j]])
                for j in range(n)] for i in range(n)]
    out = []
    all_rows = list(range(n))
    all_cols = list(range(n))
    for i in range(n):
        rows = tuple(r for r in all_rows if r != col)
        cols = tuple(c for c in all_cols if c != i)
        minor = _poly_matrix_minor_det(entries, rows, cols)
        if (i + col) % 2 == 1:
            minor = minor.neg()
        out.append(minor)
    return out


def _eigenvalue_matching_radius(matrix, rho):
    """Return rho as a root of the characteristic polynomial, or None."""
    cp = IntPolynomial.of(_linalg.charpoly(matrix))
    for root in isolate_real_roots(cp):
        if root.sign() >= 0 and compare(root, rho) == Order.Equal:
            return root
    return None


def _exact_eigenvector(matrix, lam):
    """Eigenvector for a simple eigenvalue lam via adjugate cofactors."""
    n = len(matrix)
    for col in range(n):
        polys = _adjugate_column(matrix, col)
        coords = tuple(nf.elem_from_int_poly(p, lam.poly) for p in polys)
        if any(nf.value_sign(c, lam) != 0 for c in coords):
            return ExactEigenvector(lam, coords)
    return None


def _membership_exact(cone, vec):
    """Exact cone membership for an ExactEigenvector."""
    basis, complement = cone._span_data()
    lamp = vec.lam
    for w in complement:
        dot = nf.elem_const(0)
        for wi, c in zip(w, vec.coords):
            dot = nf.elem_add(dot, nf.elem_scale(c, wi))
        if nf.value_sign(dot, lamp) != 0:
            return False
    facets = cone._facets()
    if facets:
        for h in facets:
            dot = nf.elem_const(0)
            for hi, c in zip(h, vec.coords):
                dot = nf.elem_add(dot, nf.elem_scale(c, hi))
            if nf.value_sign(dot, lamp) < 0:
                return False
        return True
    # single ray: the vector must be a nonnegative multiple of the basis ray
    b = basis[0]
    j = next(i for i, c in enumerate(b) if c != 0)
    t_sign = nf.value_sign(vec.coords[j], lamp) * (1 if b[j] > 0 else -1)
    if t_sign < 0:
        return False
    for i in range(cone.dim):
        diff = nf.elem_add(nf.elem_scale(vec.coords[i], b[j]),
                           nf.elem_scale(vec.coords[j], -b[i]))
        if nf.value_sign(diff, lamp) != 0:
            return False
    return True


@dataclass(frozen=True)
class EigenvectorPair:
    """Nef leading eigenvectors for f* and (f^-1)* with their eigenvalues."""

    nu_plus: DivisorClass
    nu_minus: DivisorClass
    lambda_plus: RealAlgebraicNumber
    lambda_minus: RealAlgebraicNumber
    exact_plus: ExactEigenvector = field(compare=False, default=None)
    exact_minus: ExactEigenvector = field(compare=False, default=None)

    def common_field(self):
        """(lam, plus_coords, minus_coords) over one defining polynomial,
        or None when the eigenvalues differ."""
        if self.exact_plus is None or self.exact_minus is None:
            return None
        return nf.common_field(self.exact_plus.coords, self.exact_plus.lam,
                               self.exact_minus.coords, self.exact_minus.lam)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def spectral_radius(pullback):
    """Largest absolute value of the real eigenvalues, as an exact number.

    For every map in scope a preserved cone forces the spectral radius to be
    attained by a real eigenvalue (Perron-Frobenius); a floating-point scan
    guards against complex eigenvalues sneaking above the real ones, which
    would mean the input is outside that class.
    """
    matrix = pullback.rows() if isinstance(pullback, PullbackMap) else \
        [list(r) for r in pullback]
    cp = IntPolynomial.of(_linalg.charpoly(matrix))
    roots = isolate_real_roots(cp)
    if not roots:
        raise InvariantViolation(
            "no real eigenvalues; spectral radius is attained by a complex "
            "pair, outside the preserved-cone class this library handles")
    rho = max_ran([r.abs() for r in roots])
    _assert_real_dominance(cp, rho)
    return rho


def _assert_real_dominance(cp, rho):
    # Distinct roots only: multiple roots are ill-conditioned for np.roots.
    from .exactreal import squarefree_part

    sf = squarefree_part(cp)
    coeffs = [float(c) for c in reversed(sf.coeffs)]
    scale = max(abs(c) for c in coeffs)
    complex_roots = np.roots([c / scale for c in coeffs])
    float_rho = max(abs(z) for z in complex_roots)
    rho_val = rho.to_float()
    if float_rho > rho_val * (1 + 1e-4) + 1e-4:
        raise InvariantViolation(
            "a complex eigenvalue exceeds every real one; spectral radius "
            "computation requires a preserved cone")


def leading_eigenvector_in_cone(pullback, cone, eps=DEFAULT_EIGEN_EPS):
    """Eigenvector for the spectral radius inside a preserved cone.

    Preconditions follow the cone version of the Perron-Frobenius theorem:
    the matrix must map the cone into itself and have spectral radius > 1.
    """
    if not cone.maps_into(pullback):
        raise PreconditionError("matrix does not map the cone into itself")
    rho = spectral_radius(pullback)
    if compare_with_rational(rho, 1) != Order.Greater:
        raise PreconditionError("spectral radius must exceed 1")
    vec, _ = _leading_eigenvector(pullback, cone, rho, eps)
    return vec


def _leading_eigenvector(pullback, cone, rho, eps):
    matrix = pullback.rows()
    lam = _eigenvalue_matching_radius(matrix, rho)
    if lam is None:
        raise InvariantViolation(
            "spectral radius is not an eigenvalue; no Perron structure")
    exact = _exact_eigenvector(matrix, lam)
    if exact is not None:
        for cand in (exact, exact.sign_flip()):
            if _membership_exact(cone, cand):
                return _package_eigenvector(cand, eps)
        raise PreconditionError(
            "the supplied cone does not contain the leading eigenvector")
    # adjugate vanished at lam: eigenvalue has geometric multiplicity > 1
    if not lam.is_rational:
        raise InvariantViolation(
            "irrational eigenvalue with multiplicity > 1 is out of scope")
    lam_q = lam.rational_value
    for g in cone.generators:
        image = pullback.apply(g)
        if all(Fraction(image[i]) == lam_q * Fraction(g[i])
               for i in range(len(g))):
            coords = tuple(nf.elem_const(c) for c in g)
            return _package_eigenvector(ExactEigenvector(lam, coords), eps)
    rows = [[Fraction(matrix[i][j]) - (lam_q if i == j else 0)
             for j in range(len(matrix))] for i in range(len(matrix))]
    for v in _linalg.nullspace(rows):
        for cand in (v, [-c for c in v]):
            if cone.contains(cand):
                coords = tuple(nf.elem_const(c) for c in cand)
                return _package_eigenvector(ExactEigenvector(lam, coords), eps)
    raise PreconditionError(
        "no eigenvector for the spectral radius lies in the cone")


def _package_eigenvector(exact, eps):
    boxes, _ = exact.normalized_enclosures(eps)
    return DivisorClass(tuple(boxes)), exact


def eigenvector_pair(pullback, cone, eps=DEFAULT_EIGEN_EPS):
    """Leading eigenvectors of f* and of (f^-1)*, certified inside the cone.

    The cone is a membership certificate, not an invariant set: no rational
    polyhedral cone is preserved by both a hyperbolic automorphism and its
    inverse, so only containment of the two eigenvectors is required.
    """
    if not pullback.is_automorphism:
        raise PreconditionError("eigenvector pairs require an automorphism")
    rho = spectral_radius(pullback)
    if compare_with_rational(rho, 1) != Order.Greater:
        raise PreconditionError("spectral radius must exceed 1")
    inv = pullback.inverse()
    rho_minus = spectral_radius(inv)

    def build(mat, r):
        lam = _eigenvalue_matching_radius(mat.rows(), r)
        if lam is None:
            raise InvariantViolation(
                "spectral radius is not an eigenvalue of the pullback")
        exact = _exact_eigenvector(mat.rows(), lam)
        if exact is None:
            raise InvariantViolation(
                "leading eigenvalue is not simple; eigenvector pair needs "
                "a simple dominant eigenvalue")
        for cand in (exact, exact.sign_flip()):
            if _membership_exact(cone, cand):
                return _package_eigenvector(cand, eps)
        raise PreconditionError(
            "the supplied cone does not contain a leading eigenvector")

    plus_class, plus_exact = build(pullback, rho)
    minus_class, minus_exact = build(inv, rho_minus)
    return EigenvectorPair(plus_class, minus_class, rho, rho_minus,
                           plus_exact, minus_exact)


@dataclass(frozen=True)
class ConditionAReport:
    holds: bool
    lambda_plus: RealAlgebraicNumber
    lambda_minus: RealAlgebraicNumber
    exceeds_one: bool
    radii_equal: bool

    def __bool__(self):
        return self.holds


def condition_A(pullback):
    """lambda(f) > 1 and lambda(f) = lambda(f^-1), decided exactly."""
    if not pullback.is_automorphism:
        raise PreconditionError("condition A is about automorphisms")
    rho = spectral_radius(pullback)
    rho_minus = spectral_radius(pullback.inverse())
    exceeds = compare_with_rational(rho, 1) == Order.Greater
    equal = compare(rho, rho_minus) == Order.Equal
    return ConditionAReport(exceeds and equal, rho, rho_minus, exceeds, equal)


@dataclass(frozen=True)
class ConditionBReport:
    verdict: str                      # "True" / "False" / "Unknown"
    self_intersection: RationalInterval
    exact_zero: bool

    def __bool__(self):
        return self.verdict == "True"


def condition_B(form, pair, cone, eps=Fraction(1, 10**12), max_refine=64):
    """Is nu = nu_+ + nu_- big, i.e. is its top self-intersection positive?"""
    for exact in (pair.exact_plus, pair.exact_minus):
        if exact is not None and not _membership_exact(cone, exact):
            raise PreconditionError("eigenvector pair does not lie in the cone")
    common = pair.common_field()
    if common is not None:
        lam, plus, minus = common
        nu = [nf.elem_add(a, b) for a, b in zip(plus, minus)]
        val = form.evaluate_ring([nu] * form.dim_x, lam.poly)
        sign = nf.value_sign(val, lam)
        box = nf.value_interval(val, lam, eps)
        return ConditionBReport("True" if sign > 0 else "False", box,
                                sign == 0)
    boxes_plus = pair.nu_plus.as_intervals()
    boxes_minus = pair.nu_minus.as_intervals()
    nu = [a + b for a, b in zip(boxes_plus, boxes_minus)]
    val = form.evaluate([nu] * form.dim_x)
    if val.strictly_positive():
        return ConditionBReport("True", val, False)
    if val.strictly_negative() or val.width == 0:
        return ConditionBReport("False", val, val.width == 0)
    return ConditionBReport("Unknown", val, False)


@dataclass(frozen=True)
class MiddleIndexReport:
    ell: int
    identity_holds: bool
    products: dict

    def __iter__(self):
        return iter((self.ell, self.identity_holds))


def middle_index_ell(form, pair):
    """Unique 0 < ell < dim with nu_+^ell . nu_-^(dim-ell) nonzero, plus the
    eigenvalue identity lambda_+^ell = lambda_-^(dim-ell)."""
    d = form.dim_x
    common = pair.common_field()
    products = {}
    nonzero = []
    if common is not None:
        lam, plus, minus = common
        for j in range(d + 1):
            val = form.evaluate_ring([plus] * j + [minus] * (d - j), lam.poly)
            sign = nf.value_sign(val, lam)
            products[j] = nf.value_interval(val, lam, Fraction(1, 10**12))
            if sign != 0 and 0 < j < d:
                nonzero.append(j)
    else:
        bp = pair.nu_plus.as_intervals()
        bm = pair.nu_minus.as_intervals()
        for j in range(d + 1):
            val = form.evaluate([bp] * j + [bm] * (d - j))
            products[j] = val
            if (0 < j < d) and not val.contains_zero():
                nonzero.append(j)
    if len(nonzero) > 1:
        raise InvariantViolation(
            "more than one nonvanishing mixed product; inconsistent input")
    if not nonzero:
        raise InvariantViolation(
            "no certified nonzero mixed product; condition B data required")
    ell = nonzero[0]
    identity = compare(pow_ran(pair.lambda_plus, ell),
                       pow_ran(pair.lambda_minus, d - ell)) == Order.Equal
    return MiddleIndexReport(ell, identity, products)


def block_product(mg, mh):
    """Block-diagonal pullback of a product system."""
    n, m = mg.rank, mh.rank
    block = [[0] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            block[i][j] = mg.matrix[i][j]
    for i in range(m):
        for j in range(m):
            block[n + i][n + j] = mh.matrix[i][j]
    return PullbackMap.of(block, mg.mapping_degree * mh.mapping_degree,
                          mg.is_automorphism and mh.is_automorphism)


def hilbert_extension(pullback):
    """Append one fixed basis vector; the lattice shadow of passing from a
    surface automorphism to the induced map on its Hilbert scheme."""
    if not pullback.is_automorphism:
        raise PreconditionError("hilbert extension is for automorphisms")
    return block_product(pullback, PullbackMap.of([[1]], 1, True))


def basis_change_invariance(pullback, u):
    """Spectral radius is unchanged under unimodular conjugation."""
    u = [list(map(int, row)) for row in u]
    if _linalg.det(u) not in (1, -1):
        raise PreconditionError("basis change must be unimodular")
    u_inv = _linalg.inverse_unimodular(u)
    conj = _linalg.mat_mul(_linalg.mat_mul(u_inv, pullback.rows()), u)
    conj_map = PullbackMap.of(conj, pullback.mapping_degree,
                              pullback.is_automorphism)
    return compare(spectral_radius(pullback),
                   spectral_radius(conj_map)) == Order.Equal


def check_form_multiplicativity(pullback, form):
    """form(M e_{i_1}, ..., M e_{i_d}) == degree * form(e_{i_1}, ..., e_{i_d})
    as an exact integer identity over all basis tuples."""
    n = pullback.rank
    images = [pullback.apply([1 if k == i else 0 for k in range(n)])
              for i in range(n)]
    images = [[Fraction(c) for c in img] for img in images]
    for idx in itertools.product(range(n), repeat=form.dim_x):
        lhs = form.evaluate([images[i] for i in idx])
        basis_vecs = [[Fraction(1) if k == i else Fraction(0)
                       for k in range(n)] for i in idx]
        rhs = form.evaluate(basis_vecs) * pullback.mapping_degree
        if lhs != rhs:
            return False
    return True
