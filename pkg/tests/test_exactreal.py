"""Exact real arithmetic: root isolation, refinement, comparison, roots."""

import random
from fractions import Fraction

import numpy as np
import pytest

from dynheights.errors import DomainError, InvalidInput
from dynheights.exactreal import (
    IntPolynomial,
    Order,
    RationalInterval,
    RealAlgebraicNumber,
    compare,
    compare_with_rational,
    count_real_roots,
    isolate_real_roots,
    kth_root,
    poly_eval_interval,
    pow_ran,
    refine,
    squarefree_part,
)


def poly(*coeffs):
    """Ascending coefficients, constant first."""
    return IntPolynomial.of(coeffs)


class TestIsolation:
    def test_linear(self):
        roots = isolate_real_roots(poly(-1, 1))  # t - 1
        assert len(roots) == 1
        assert roots[0].is_rational and roots[0].rational_value == 1

    def test_quadratic_salem_factor(self):
        # t^2 - 3t + 1; larger root (3+sqrt5)/2 = 2.618...
        roots = isolate_real_roots(poly(1, -3, 1))
        assert len(roots) == 2
        big = roots[-1].refined(Fraction(1, 10**6))
        assert Fraction("2.61") < big.lo and big.hi < Fraction("2.62")

    def test_wehler_cubic(self):
        # t^3 - 17t^2 - 17t + 1 = (t+1)(t^2-18t+1)
        p = poly(1, -17, -17, 1)
        factor = p.divexact(poly(1, 1))
        assert factor.coeffs == (1, -18, 1)
        roots = isolate_real_roots(p)
        assert len(roots) == 3
        assert compare_with_rational(roots[0], -1) == Order.Equal
        big = roots[-1].refined(Fraction(1, 10**6))
        assert Fraction("17.94") < big.lo and big.hi < Fraction("17.95")

    def test_zero_polynomial_rejected(self):
        with pytest.raises(InvalidInput):
            isolate_real_roots(poly())

    def test_counts_match_numpy_oracle(self):
        rng = random.Random(7)
        for _ in range(60):
            deg = rng.randint(1, 6)
            coeffs = [rng.randint(-8, 8) for _ in range(deg)] + [rng.randint(1, 8)]
            p = IntPolynomial.of(coeffs)
            sf = squarefree_part(p)
            got = isolate_real_roots(p)
            all_roots = np.roots(list(reversed(sf.coeffs)))
            expected = [r.real for r in all_roots if abs(r.imag) < 1e-9]
            assert len(got) == len(expected)
            for ran, approx in zip(got, sorted(expected)):
                tight = ran.refined(Fraction(1, 10**8))
                assert abs(float(tight.lo) - approx) < 1e-6

    def test_intervals_pairwise_disjoint(self):
        roots = isolate_real_roots(poly(0, -1, 0, 1))  # t(t-1)(t+1)
        assert len(roots) == 3
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                assert roots[i].hi < roots[j].lo or roots[j].hi < roots[i].lo

    def test_multiple_roots_reported_once(self):
        # (t-1)^2 (t+2)
        p = poly(2, -3, 0, 1)
        roots = isolate_real_roots(p)
        assert len(roots) == 2

    def test_clustered_roots_separated(self):
        # roots 1 and 1 + 2^-20 must land in disjoint intervals
        eps = Fraction(1, 2**20)
        a = IntPolynomial.of([-1, 1])                       # t - 1
        b = IntPolynomial.of([-(2**20 + 1), 2**20])         # 2^20 t - (2^20+1)
        c = IntPolynomial.of([5, 1])                        # t + 5
        p = a.mul(b).mul(c)
        roots = isolate_real_roots(p)
        assert len(roots) == 3
        assert compare(roots[0],
                       RealAlgebraicNumber.from_rational(-5)) == Order.Equal
        assert compare(roots[1],
                       RealAlgebraicNumber.from_rational(1)) == Order.Equal
        assert compare(roots[2],
                       RealAlgebraicNumber.from_rational(1 + eps)) == Order.Equal
        assert compare(roots[1], roots[2]) == Order.Less

    def test_sturm_count_equals_emitted(self):
        rng = random.Random(21)
        for _ in range(40):
            deg = rng.randint(1, 7)
            coeffs = [rng.randint(-5, 5) for _ in range(deg)] + [rng.randint(1, 4)]
            p = IntPolynomial.of(coeffs)
            sf = squarefree_part(p)
            assert count_real_roots(sf) == len(isolate_real_roots(p))


class TestRefine:
    def test_linear_trivial(self):
        x = RealAlgebraicNumber.make(poly(-1, 1), 0, 2)
        out = refine(x, Fraction(1, 10))
        assert out.width <= Fraction(1, 10) and out.contains(1)

    def test_sqrt2_bisection_oracle(self):
        x = RealAlgebraicNumber.make(poly(-2, 0, 1), 1, 2)
        out = refine(x, Fraction(1, 10**6))
        lo, hi = Fraction(1), Fraction(2)
        while hi - lo > Fraction(1, 10**6):
            m = (lo + hi) / 2
            if m * m < 2:
                lo = m
            else:
                hi = m
        assert out.width <= Fraction(1, 10**6)
        assert out.lo <= hi and lo <= out.hi  # overlaps the oracle interval

    def test_nested_refinement(self):
        x = RealAlgebraicNumber.make(poly(1, -18, 1), 17, 18)
        coarse = refine(x, Fraction(1, 100))
        fine = refine(x, Fraction(1, 10**12))
        assert fine.lo >= coarse.lo - Fraction(1, 100)
        assert fine.width <= Fraction(1, 10**12)
        assert abs(float(fine.midpoint) - (9 + 4 * 5 ** 0.5)) < 1e-10

    def test_bad_eps(self):
        x = RealAlgebraicNumber.from_rational(1)
        with pytest.raises(InvalidInput):
            refine(x, 0)


class TestCompare:
    def test_equal_rationals(self):
        assert compare(RealAlgebraicNumber.from_rational(1),
                       RealAlgebraicNumber.from_rational(1)) == Order.Equal

    def test_root_vs_two(self):
        big = isolate_real_roots(poly(1, -3, 1))[-1]
        assert compare_with_rational(big, 2) == Order.Greater
        assert compare_with_rational(big, 3) == Order.Less

    def test_identical_irrational(self):
        a = isolate_real_roots(poly(1, -18, 1))[-1]
        b = isolate_real_roots(poly(1, -18, 1))[-1]
        assert compare(a, b) == Order.Equal

    def test_equal_roots_of_different_polynomials(self):
        # sqrt(2) as root of t^2-2 and of (t^2-2)(t-5)/... distinct defining data
        a = isolate_real_roots(poly(-2, 0, 1))[-1]
        b = isolate_real_roots(poly(10, -2, -5, 1))[-1]  # (t^2-2)(t-5)
        assert b.to_float() == pytest.approx(5)
        mid = isolate_real_roots(poly(10, -2, -5, 1))[1]
        assert compare(a, mid) == Order.Equal

    def test_close_but_distinct(self):
        a = isolate_real_roots(poly(-2, 0, 1))[-1]          # sqrt2
        b = isolate_real_roots(poly(-2000001, 0, 1000000))[-1]
        assert compare(a, b) == Order.Less

    def test_refinement_consistency(self):
        a = isolate_real_roots(poly(-2, 0, 1))[-1]
        b = isolate_real_roots(poly(-3, 0, 1))[-1]
        assert compare(a, b) == Order.Less
        ra = a.refined(Fraction(1, 10**10))
        rb = b.refined(Fraction(1, 10**10))
        assert ra.hi < rb.lo


class TestKthRoot:
    def test_perfect_squares(self):
        assert kth_root(4, 2).rational_value == 2
        assert kth_root(8, 3).rational_value == 2
        assert kth_root(Fraction(9, 4), 2).rational_value == Fraction(3, 2)

    def test_delta_four_bundle_case(self):
        d = kth_root(4, 2)
        assert d.is_rational and d.rational_value == 2

    def test_irrational(self):
        r = kth_root(2, 2)
        assert r.poly.coeffs == (-2, 0, 1)
        assert r.to_float() == pytest.approx(2 ** 0.5)

    def test_algebraic_argument(self):
        golden_sq = isolate_real_roots(poly(1, -3, 1))[-1]  # (3+sqrt5)/2
        r = kth_root(golden_sq, 2)
        assert r.to_float() == pytest.approx(((3 + 5 ** 0.5) / 2) ** 0.5)
        assert compare(pow_ran(r, 2), golden_sq) == Order.Equal

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            kth_root(0, 2)
        with pytest.raises(DomainError):
            kth_root(-4, 2)
        neg = RealAlgebraicNumber.from_rational(-3)
        with pytest.raises(DomainError):
            kth_root(neg, 3)


class TestPow:
    def test_rational(self):
        x = RealAlgebraicNumber.from_rational(Fraction(3, 2))
        assert pow_ran(x, 3).rational_value == Fraction(27, 8)

    def test_sqrt2_squared(self):
        x = isolate_real_roots(poly(-2, 0, 1))[-1]
        assert compare_with_rational(pow_ran(x, 2), 2) == Order.Equal

    def test_salem_square(self):
        lam = isolate_real_roots(poly(1, -6, 1))[-1]  # 3+2sqrt2
        sq = pow_ran(lam, 2)                          # 17+12sqrt2
        assert compare(sq, isolate_real_roots(poly(1, -34, 1))[-1]) == Order.Equal


class TestIntervalArithmetic:
    def test_soundness_random_expressions(self):
        rng = random.Random(3)
        for _ in range(200):
            a = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
            b = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
            ia = RationalInterval(a - Fraction(1, 7), a + Fraction(1, 9))
            ib = RationalInterval(b - Fraction(1, 11), b + Fraction(1, 5))
            assert (ia + ib).contains(a + b)
            assert (ia - ib).contains(a - b)
            assert (ia * ib).contains(a * b)
            assert ia.pow_int(3).contains(a ** 3)
            if not ib.contains_zero():
                assert (ia / ib).contains(a / b)

    def test_poly_eval_enclosure(self):
        p = poly(1, -3, 0, 2)
        x = Fraction(7, 3)
        box = RationalInterval(x - Fraction(1, 100), x + Fraction(1, 100))
        assert poly_eval_interval(p, box).contains(p(x))

    def test_max_with(self):
        straddle = RationalInterval(Fraction(1, 2), Fraction(3, 2))
        clipped = straddle.max_with(1)
        assert clipped.lo == 1 and clipped.hi == Fraction(3, 2)

    def test_invalid(self):
        with pytest.raises(InvalidInput):
            RationalInterval(Fraction(2), Fraction(1))
