"""Beauville-Bogomolov quadratic forms and the Fujiki relation.

A form of signature (1, rho-1) with Fujiki constant c on a variety of
dimension 2m induces the full top intersection form as the unique symmetric
multilinear extension of D^{2m} = c * q(D)^m: a sum over perfect matchings
weighted by 1/(2m-1)!!.  Isometries with spectral radius > 1 force their
leading eigenvectors onto the isotropic cone, which is what the isotropy
report certifies.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import _numberfield as nf
from .errors import InvalidInput
from .exactreal import RationalInterval
from .lattice import TopIntersectionForm, middle_index_ell


def signature(gram):
    """Inertia (pos, neg, zero) by exact congruence diagonalization."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if len(a[i]) != n:
            raise InvalidInput("gram matrix must be square")
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise InvalidInput("gram matrix must be symmetric")
    pos = neg = zero = 0
    k = 0
    while k < n:
        pivot = next((i for i in range(k, n) if a[i][i] != 0), None)
        if pivot is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                        if a[i][j] != 0), None)
            if off is None:
                zero += n - k
                break
            i, j = off
            # v_i -> v_i + v_j turns the zero diagonal entry into 2*a[i][j]
            for col in range(n):
                a[i][col] += a[j][col]
            for row in range(n):
                a[row][i] += a[row][j]
            pivot = i
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            for row in a:
                row[k], row[pivot] = row[pivot], row[k]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for r in range(k + 1, n):
            if a[r][k] != 0:
                f = a[r][k] / d
                for col in range(n):
                    a[r][col] -= f * a[k][col]
                for row in range(n):
                    a[row][r] -= f * a[row][k]
        k += 1
    return (pos, neg, zero)


@dataclass(frozen=True)
class BeauvilleBogomolovForm:
    """Gram matrix q, Fujiki constant c > 0, half-dimension m (dim X = 2m)."""

    gram: tuple
    fujiki_constant: Fraction
    half_dim: int

    @staticmethod
    def of(gram, fujiki_constant, half_dim):
        rows = tuple(tuple(Fraction(x) for x in row) for row in gram)
        c = Fraction(fujiki_constant)
        m = int(half_dim)
        if c <= 0:
            raise InvalidInput("Fujiki constant must be positive")
        if m < 1:
            raise InvalidInput("half-dimension must be >= 1")
        sig = signature([list(r) for r in rows])
        if sig != (1, len(rows) - 1, 0):
            raise InvalidInput(
                f"form must have signature (1, rho-1); got {sig}")
        return BeauvilleBogomolovForm(rows, c, m)

    @property
    def rank(self):
        return len(self.gram)

    def q(self, u, v):
        return sum(Fraction(u[i]) * self.gram[i][j] * Fraction(v[j])
                   for i in range(self.rank) for j in range(self.rank))


def _perfect_matchings(items):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k, partner in enumerate(rest):
        for sub in _perfect_matchings(rest[:k] + rest[k + 1:]):
            yield ((first, partner),) + sub


def double_factorial_odd(m):
    """(2m-1)!! = number of perfect matchings of 2m items."""
    out = 1
    for k in range(1, 2 * m, 2):
        out *= k
    return out


def induced_top_form(bb):
    """Unique symmetric 2m-linear extension of D^{2m} = c q(D)^m."""
    m = bb.half_dim
    norm = Fraction(bb.fujiki_constant, double_factorial_odd(m))
    values = {}
    for idx in itertools.combinations_with_replacement(range(bb.rank), 2 * m):
        total = Fraction(0)
        for matching in _perfect_matchings(tuple(range(2 * m))):
            term = Fraction(1)
            for a, b in matching:
                term *= bb.gram[idx[a]][idx[b]]
            total += term
        values[idx] = norm * total
    return TopIntersectionForm(2 * m, bb.rank, values)


def isometry_check(pullback, bb):
    """Exact integer identity M^T q M == q."""
    mat = pullback.rows() if hasattr(pullback, "rows") else \
        [list(r) for r in pullback]
    n = len(mat)
    if n != bb.rank:
        raise InvalidInput("matrix size does not match the form")
    for i in range(n):
        for j in range(n):
            val = sum(Fraction(mat[k][i]) * bb.gram[k][l] * Fraction(mat[l][j])
                      for k in range(n) for l in range(n))
            if val != bb.gram[i][j]:
                return False
    return True


@dataclass(frozen=True)
class IsotropyBigness:
    verdict: str                     # "Ok" or "Unknown"
    q_plus: RationalInterval
    q_minus: RationalInterval
    q_plus_exact_zero: bool
    q_minus_exact_zero: bool
    q_nu: RationalInterval
    nu_big: str                      # "True" / "False" / "Unknown"
    ell: int
    identity_holds: bool


def isotropy_and_bigness_report(bb, pair, eps=Fraction(1, 10**10)):
    """Certify q(nu_+) = q(nu_-) = 0, q(nu_+ + nu_-) > 0, and ell = m.

    The eigenvector pair must come from an isometry with spectral radius
    above 1; that is exactly what makes the leading classes isotropic.
    """
    top = induced_top_form(bb)
    common = pair.common_field()
    if common is not None:
        lam, plus, minus = common
        modulus = lam.poly

        def q_ring(u, v):
            total = nf.elem_const(0)
            for i in range(bb.rank):
                for j in range(bb.rank):
                    if bb.gram[i][j] == 0:
                        continue
                    term = nf.elem_mul(u[i], v[j], modulus)
                    total = nf.elem_add(total,
                                        nf.elem_scale(term, bb.gram[i][j]))
            return total

        qpp = q_ring(plus, plus)
        qmm = q_ring(minus, minus)
        nu = [nf.elem_add(a, b) for a, b in zip(plus, minus)]
        qnn = q_ring(nu, nu)
        sp, sm, sn = (nf.value_sign(v, lam) for v in (qpp, qmm, qnn))
        report_boxes = [nf.value_interval(v, lam, eps)
                        for v in (qpp, qmm, qnn)]
        big = "True" if sn > 0 else "False"
        if big == "True":
            mi = middle_index_ell(top, pair)
            ell, identity = mi.ell, mi.identity_holds
        else:
            ell, identity = None, False
        return IsotropyBigness("Ok", report_boxes[0], report_boxes[1],
                               sp == 0, sm == 0, report_boxes[2], big,
                               ell, identity)
    # enclosure-only path
    bp = pair.nu_plus.as_intervals()
    bm = pair.nu_minus.as_intervals()

    def q_box(u, v):
        total = RationalInterval.point(0)
        for i in range(bb.rank):
            for j in range(bb.rank):
                if bb.gram[i][j] != 0:
                    total = total + u[i] * v[j] * bb.gram[i][j]
        return total

    qpp, qmm = q_box(bp, bp), q_box(bm, bm)
    nu = [a + b for a, b in zip(bp, bm)]
    qnn = q_box(nu, nu)
    big = ("True" if qnn.strictly_positive()
           else "False" if qnn.strictly_negative() else "Unknown")
    verdict = "Ok" if big != "Unknown" else "Unknown"
    if big == "True":
        mi = middle_index_ell(top, pair)
        ell, identity = mi.ell, mi.identity_holds
    else:
        ell, identity = None, False
    return IsotropyBigness(verdict, qpp, qmm, False, False, qnn, big,
                           ell, identity)
