"""Projective-bundle Chow calculus and endomorphism degree formulas."""

import random
from fractions import Fraction

import pytest

from dynheights.bundles import (
    BundleEndoData,
    ChowRing,
    HNType,
    chow_mul,
    chow_pullback,
    degree_identity_check,
    dichotomy_classify,
    intersection_number,
    nef_generators,
    pullback_action,
    slope_stats,
)
from dynheights.errors import InvalidInput
from dynheights.exactreal import Order, compare_with_rational


class TestChowMul:
    def test_df_no_reduction(self):
        ring = ChowRing(2, 3)
        df = chow_mul(ring.D(), ring.F())
        assert intersection_number(df) == 1

    def test_d_squared_reduces(self):
        # D^2 = -c1 D F with n=2, c1=3
        ring = ChowRing(2, 3)
        d2 = chow_mul(ring.D(), ring.D())
        assert ring.scalars.is_zero(d2.p[0]) and ring.scalars.is_zero(d2.p[1])
        assert intersection_number(d2) == -3

    def test_zero_c1(self):
        ring = ChowRing(2, 0)
        val = chow_mul(ring.add(ring.D(), ring.F()),
                       ring.add(ring.D(), ring.scale(ring.F(), -1)))
        # (D+F)(D-F) = D^2 - F^2 = 0 when c1 = 0
        assert ring.is_zero(val)

    def test_f_squared_zero(self):
        ring = ChowRing(3, 2)
        assert ring.is_zero(chow_mul(ring.F(), ring.F()))

    def test_mismatched_rings(self):
        with pytest.raises(InvalidInput):
            chow_mul(ChowRing(2, 3).D(), ChowRing(2, 4).D())

    def test_ring_axioms_random(self):
        rng = random.Random(7)
        ring = ChowRing(3, 2)
        def rand_elem():
            return ring.element(
                p=[rng.randint(-3, 3) for _ in range(3)],
                q=[rng.randint(-3, 3) for _ in range(3)])
        for _ in range(200):
            a, b, c = rand_elem(), rand_elem(), rand_elem()
            ab = chow_mul(a, b)
            ba = chow_mul(b, a)
            assert ab == ba
            assert chow_mul(ab, c) == chow_mul(a, chow_mul(b, c))
            left = chow_mul(a, ring.add(b, c))
            right = ring.add(chow_mul(a, b), chow_mul(a, c))
            assert left == right

    def test_reduction_confluence(self):
        # computing D^(n+k) by different association orders agrees
        ring = ChowRing(3, 5)
        d = ring.D()
        via_left = ring.pow(d, 5)
        via_split = chow_mul(ring.pow(d, 2), ring.pow(d, 3))
        assert via_left == via_split
        assert ring.is_zero(via_left)  # D^5 = 0 in rank 3 (D^4 = 0 already)


class TestIntersectionNumber:
    def test_dn1f_is_one(self):
        ring = ChowRing(4, 7)
        top = chow_mul(ring.pow(ring.D(), 3), ring.F())
        assert intersection_number(top) == 1

    def test_dn_is_minus_c1(self):
        ring = ChowRing(3, 2)
        assert intersection_number(ring.pow(ring.D(), 3)) == -2

    def test_f_powers_vanish(self):
        ring = ChowRing(3, 2)
        val = chow_mul(chow_mul(ring.F(), ring.F()), ring.D())
        assert ring.is_zero(val)
        with pytest.raises(InvalidInput):
            intersection_number(ring.D())  # not top degree


class TestHNTypes:
    def test_validation(self):
        with pytest.raises(InvalidInput):
            HNType.of([(1, 0), (1, 2)])  # increasing slopes
        with pytest.raises(InvalidInput):
            HNType.of([(0, 1)])
        HNType.of([(1, 2), (1, 0)])

    def test_slope_stats_semistable(self):
        stats = slope_stats(HNType.of([(2, 2)]))
        assert stats.mu_min == stats.mu_max == stats.mu == 1
        assert stats.semistable

    def test_slope_sandwich(self):
        stats = slope_stats(HNType.of([(1, 2), (1, 0)]))
        assert stats.mu_max == 2 > stats.mu == 1 > stats.mu_min == 0

    def test_three_pieces(self):
        stats = slope_stats(HNType.of([(1, 3), (2, 2), (1, -1)]))
        assert stats.mu_max == 3
        assert stats.mu == 1
        assert stats.mu_min == -1

    def test_random_nonsemistable_sandwich(self):
        rng = random.Random(3)
        built = 0
        while built < 100:
            k = rng.randint(2, 4)
            pieces = []
            slope = Fraction(rng.randint(2, 6))
            for _ in range(k):
                r = rng.randint(1, 3)
                d = int(slope * r) - rng.randint(0, 2)
                pieces.append((r, d))
                slope = Fraction(pieces[-1][1], pieces[-1][0]) - \
                    Fraction(rng.randint(1, 3), r)
            try:
                hn = HNType.of(pieces)
            except InvalidInput:
                continue
            if hn.semistable:
                continue
            stats = slope_stats(hn)
            assert stats.mu_max > stats.mu > stats.mu_min
            built += 1


class TestNefGenerators:
    def test_balanced(self):
        f, d_class = nef_generators(HNType.of([(2, 2)]))
        # mu_min = 1: D - F
        assert float(d_class.ring.scalars.to_float(d_class.q[0])) == -1

    def test_split(self):
        _, d_class = nef_generators(HNType.of([(1, 2), (1, 0)]))
        assert d_class.ring.scalars.is_zero(d_class.q[0])  # mu_min = 0: D

    def test_negative(self):
        _, d_class = nef_generators(HNType.of([(1, 0), (1, -2)]))
        assert float(d_class.ring.scalars.to_float(d_class.q[0])) == 2


class TestPullbackAction:
    def test_worked_example(self):
        # n=3, deg g=4, delta=4, mu_min=-1: d = 2, f*D = -2F + 2D
        data = BundleEndoData.of(3, 4, 4, -1)
        report = pullback_action(data)
        assert report.eigenvalue_base == 4
        assert report.eigenvalue_fiber.rational_value == 2
        assert compare_with_rational(report.lambda1, 4) == Order.Equal
        sr = ChowRing(3, 0, data.d).scalars
        assert sr.to_float(report.matrix[0][1]) == pytest.approx(-2)

    def test_identity_action(self):
        data = BundleEndoData.of(3, 1, 1, 5)
        report = pullback_action(data)
        assert compare_with_rational(report.lambda1, 1) == Order.Equal

    def test_fiber_dominates(self):
        data = BundleEndoData.of(2, 2, 8, 0)
        report = pullback_action(data)
        assert report.eigenvalue_fiber.rational_value == 8
        assert compare_with_rational(report.lambda1, 8) == Order.Equal

    def test_eigenvectors_exact(self):
        # F and D - mu_min F are exact eigenvectors of the ring action
        for (n, deg_g, delta, mu_min) in [(3, 3, 8, -1), (2, 2, 9, 2),
                                          (4, 2, 27, Fraction(1, 2))]:
            data = BundleEndoData.of(n, deg_g, delta, mu_min)
            c1 = 0
            ring = ChowRing(data.n, c1, data.d)
            sr = ring.scalars
            f_img, ring2 = chow_pullback(data, ring.F(), c1)
            expect = ring2.scale(ring2.F(), data.deg_g)
            assert f_img == expect
            nef = ring.element(p=[0, 1], q=[-data.mu_min])
            nef_img, ring3 = chow_pullback(data, nef, c1)
            d_scalar = ring3.scalars.d()
            scaled = ChowRing.mul(
                ring3, ring3.element(p=[d_scalar]),
                ring3.element(p=[sr.const(0), sr.const(1)],
                              q=[sr.scale(sr.const(1), -data.mu_min)]))
            assert ring3.is_zero(ring3.add(nef_img, ring3.scale(scaled, -1)))


class TestDegreeIdentity:
    def test_worked_example(self):
        # n=3, deg g=3, d=2 (delta=4): deg f = 12 both ways
        data = BundleEndoData.of(3, 3, 4, -1)
        assert data.deg_f == 12
        assert degree_identity_check(data)

    def test_trivial_delta(self):
        data = BundleEndoData.of(3, 5, 1, 2)
        assert degree_identity_check(data)

    def test_random_sweep(self):
        rng = random.Random(55)
        for _ in range(100):
            n = rng.randint(2, 5)
            deg_g = rng.randint(1, 5)
            d_target = rng.randint(1, 4)
            delta = Fraction(d_target) ** (n - 1)
            mu_min = Fraction(rng.randint(-3, 3))
            data = BundleEndoData.of(n, deg_g, delta, mu_min)
            assert data.d.rational_value == d_target
            assert degree_identity_check(data, c1=rng.randint(-3, 3))

    def test_irrational_d(self):
        # delta = 4, n = 3 gives d = 2; delta = 8, n = 3 gives d = 2 sqrt 2
        data = BundleEndoData.of(3, 2, 8, -2)
        assert not data.d.is_rational
        assert degree_identity_check(data)
        assert degree_identity_check(data, c1=3)


class TestDichotomy:
    def test_forced_base_equality(self):
        data = BundleEndoData.of(2, 3, 9, 0)
        assert dichotomy_classify(data, c1=2) == "ForcedBaseEquality"

    def test_slope_balanced(self):
        # trivial rank-2 bundle: c1 = 0, mu_min = 0, d != deg g
        data = BundleEndoData.of(2, 2, 8, 0)
        assert dichotomy_classify(data, c1=0) == "SlopeBalanced"

    def test_both(self):
        data = BundleEndoData.of(2, 3, 3, 0)
        assert data.d.rational_value == 3
        assert dichotomy_classify(data, c1=0) == "Both"

    def test_split_negative(self):
        # O(1) + O(-1): c1 = 0, mu_min = -1: key = -2 != 0
        data = BundleEndoData.of(2, 2, 4, -1)
        assert dichotomy_classify(data, c1=0) == "ForcedBaseEquality"

    def test_matches_key_sign_random(self):
        rng = random.Random(2)
        for _ in range(100):
            n = rng.randint(2, 5)
            data = BundleEndoData.of(n, rng.randint(1, 4),
                                     Fraction(rng.randint(1, 4)) ** (n - 1),
                                     Fraction(rng.randint(-3, 3),
                                              rng.randint(1, 2)))
            c1 = rng.randint(-4, 4)
            key = Fraction(c1) + n * data.mu_min
            got = dichotomy_classify(data, c1)
            if key != 0:
                assert got == "ForcedBaseEquality"
            else:
                assert got in ("SlopeBalanced", "Both")


class TestPullbackMultiplicativity:
    def test_top_products_scale_by_deg_f(self):
        # f* is a ring homomorphism only for data satisfying the dichotomy:
        # either d = deg(g) (base equality) or c1 + n mu_min = 0.
        rng = random.Random(77)
        for case in range(30):
            n = rng.randint(2, 4)
            deg_g = rng.randint(1, 3)
            if case % 2 == 0:
                d_val = deg_g
                mu_min = Fraction(rng.randint(-2, 2))
                c1 = rng.randint(-3, 3)
            else:
                d_val = rng.randint(1, 3)
                mu_min = Fraction(rng.randint(-2, 2))
                c1 = -n * mu_min
            data = BundleEndoData.of(n, deg_g, Fraction(d_val) ** (n - 1),
                                     mu_min)
            ring = ChowRing(n, c1, data.d)
            # random top product: F . D^(n-1) or D^n with random combos
            factors = []
            for _ in range(n):
                if rng.random() < 0.5:
                    factors.append(ring.add(ring.D(),
                                            ring.scale(ring.F(),
                                                       rng.randint(-2, 2))))
                else:
                    factors.append(ring.D())
            product = ring.one()
            pulled = ring.one()
            for fct in factors:
                product = chow_mul(product, fct)
                img, _ = chow_pullback(data, fct, c1)
                pulled = chow_mul(pulled, img)
            base = intersection_number(product)
            moved = intersection_number(pulled)
            sr = ring.scalars
            base_s = base if not isinstance(base, (int, Fraction)) else \
                sr.const(base)
            expect = sr.scale(base_s, data.deg_f)
            moved_s = moved if not isinstance(moved, (int, Fraction)) else \
                sr.const(moved)
            assert sr.equal(moved_s, expect)
