"""Canonical heights, alpha estimators, periodicity, KS reports."""

import math
from fractions import Fraction

import pytest

from dynheights.canonical import (
    alpha_estimate,
    canonical_forward,
    density_heuristic,
    functional_equation_residual,
    ks_report,
    periodicity_test,
    tate_limit,
)
from dynheights.errors import InvalidInput, PreconditionError
from dynheights.exactreal import RationalInterval
from dynheights.heights import MultiProjPoint
from dynheights.lattice import spectral_radius
from dynheights.systems import (
    MonomialSystem,
    PowerSystem,
    ProductSystem,
    iterate_orbit,
)

GOLDEN_SQ = (3 + 5 ** 0.5) / 2


class TestAlphaEstimate:
    def test_power_map_estimators(self):
        sysm = PowerSystem(2, 2)
        orbit = iterate_orbit(sysm, MultiProjPoint.of((1, 2, 3)), 10,
                              {"ample": (Fraction(1),)})
        est = alpha_estimate(orbit, "ample")
        # ratio is exactly 2 up to interval width
        assert est.ratio_estimate.contains(2)
        assert est.ratio_estimate.width < Fraction(1, 10**9)
        # root carries the documented h(P)^(1/N) correction:
        # (2^10 log 3)^(1/10) = 2 * (log 3)^(1/10)
        expected = 2 * math.log(3) ** 0.1
        assert abs(float(est.root_estimate.midpoint) - expected) < 1e-6
        assert abs(float(est.root_estimate.midpoint) - 2) < 0.02 * 2

    def test_monomial_ratio_convergence(self):
        sysm = MonomialSystem([[2, 1], [1, 1]])
        orbit = iterate_orbit(sysm, sysm.parse_point(["2", "3"]), 25,
                              {"ample": (Fraction(1), Fraction(1))})
        est = alpha_estimate(orbit, "ample")
        assert abs(float(est.ratio_estimate.midpoint) - GOLDEN_SQ) \
            <= 0.02 * GOLDEN_SQ

    def test_fixed_point_root_tends_to_one(self):
        sysm = PowerSystem(2, 1)
        orbit = iterate_orbit(sysm, MultiProjPoint.of((1, 1)), 12,
                              {"ample": (Fraction(1),)})
        est = alpha_estimate(orbit, "ample")
        assert est.root_estimate.contains(1)
        assert est.ratio_estimate.contains(1)

    def test_orbit_too_short(self):
        sysm = PowerSystem(2, 1)
        orbit = iterate_orbit(sysm, MultiProjPoint.of((1, 2)), 1,
                              {"ample": (Fraction(1),)})
        with pytest.raises(InvalidInput):
            alpha_estimate(orbit, "ample")

    def test_upper_bound_sanity(self):
        # alpha estimates never exceed lambda1 by more than 5 percent
        for sysm, pt, n_basis in [
                (PowerSystem(2, 2), MultiProjPoint.of((1, 2, 3)), 1),
                (MonomialSystem([[2, 1], [1, 1]]), None, 2)]:
            if pt is None:
                pt = sysm.parse_point(["2", "3"])
            weights = {"ample": tuple(Fraction(1) for _ in range(n_basis))}
            orbit = iterate_orbit(sysm, pt, 15, weights)
            est = alpha_estimate(orbit, "ample")
            lam = spectral_radius(sysm.pullback_matrix()).to_float()
            assert float(est.ratio_estimate.midpoint) <= lam * 1.05
            assert float(est.root_estimate.midpoint) <= lam * 1.05


class TestTateLimit:
    def test_power_exact_telescoping(self):
        sysm = PowerSystem(2, 2)
        tv = tate_limit(sysm, MultiProjPoint.of((1, 2, 3)), (Fraction(1),),
                        Fraction(2), steps=8)
        # telescoping is exact; the empirical constant only reflects the
        # widths of the log enclosures
        assert tv.constant < Fraction(1, 10**15)
        assert tv.error_bound < Fraction(1, 10**15)
        assert abs(float(tv.value.midpoint) - math.log(3)) < 1e-10

    def test_fixed_point_zero(self):
        sysm = PowerSystem(2, 1)
        tv = tate_limit(sysm, MultiProjPoint.of((1, 1)), (Fraction(1),),
                        Fraction(2), steps=10)
        assert tv.value.contains(0)
        assert tv.value.width < Fraction(1, 1000)

    def test_lambda_at_most_one_rejected(self):
        sysm = PowerSystem(2, 1)
        with pytest.raises(PreconditionError):
            tate_limit(sysm, MultiProjPoint.of((1, 2)), (Fraction(1),),
                       Fraction(1), steps=5)

    def test_backward_requires_invertible(self):
        sysm = PowerSystem(2, 1)
        with pytest.raises(PreconditionError):
            tate_limit(sysm, MultiProjPoint.of((1, 2)), (Fraction(1),),
                       Fraction(2), steps=5, direction="backward")

    def test_tate_scaling_between_depths(self):
        # |value_N - value_{N+1}| <= C lambda^-N with the reported constant
        sysm = MonomialSystem([[2, 1], [1, 1]])
        pt = sysm.parse_point(["2", "3"])
        lam = spectral_radius(sysm.pullback_matrix())
        w = (Fraction(1), Fraction(1))
        for depth in (6, 9, 12):
            a = tate_limit(sysm, pt, w, lam, steps=depth)
            b = tate_limit(sysm, pt, w, lam, steps=depth + 1)
            gap = abs(float(a.raw.midpoint) - float(b.raw.midpoint))
            lam_f = lam.to_float()
            c = max(float(a.constant), float(b.constant))
            assert gap <= c * lam_f ** (-depth) + 1e-9


class TestForwardCanonical:
    def test_power_formal_minus_zero(self):
        sysm = PowerSystem(2, 2)
        res = canonical_forward(sysm, MultiProjPoint.of((1, 2, 3)),
                                (Fraction(1),), Fraction(2), steps=8)
        assert res.hhat_minus == RationalInterval.point(0)
        assert abs(float(res.hhat.midpoint) - math.log(3)) < 1e-10

    def test_homogeneity(self):
        # doubling the weights doubles the canonical height
        sysm = PowerSystem(2, 2)
        p = MultiProjPoint.of((1, 2, 3))
        res1 = canonical_forward(sysm, p, (Fraction(1),), Fraction(2), 8)
        res2 = canonical_forward(sysm, p, (Fraction(2),), Fraction(2), 8)
        doubled = res1.hhat * 2
        assert doubled.intersects(res2.hhat)


class TestPeriodicity:
    def test_fixed_point(self):
        sysm = MonomialSystem([[0, -1], [1, 0]])
        pt = sysm.parse_point(["1", "1"])
        verdict = periodicity_test(sysm, pt, 10, 6)
        assert verdict.kind == "Periodic" and verdict.period == 1

    def test_four_cycle(self):
        sysm = MonomialSystem([[0, -1], [1, 0]])
        pt = sysm.parse_point(["2", "3"])
        verdict = periodicity_test(sysm, pt, 10, 6)
        assert verdict.kind == "Periodic" and verdict.period == 4

    def test_escape(self):
        sysm = MonomialSystem([[2, 1], [1, 1]])
        pt = sysm.parse_point(["2", "3"])
        verdict = periodicity_test(sysm, pt, 5, 6)
        assert verdict.kind == "NotPeriodic"

    def test_non_invertible_rejected(self):
        with pytest.raises(PreconditionError):
            periodicity_test(PowerSystem(2, 1), MultiProjPoint.of((1, 2)),
                             5, 4)


class TestDensityHeuristic:
    def test_monomial_independent(self):
        sysm = MonomialSystem([[2, 1], [1, 1]])
        verdict = density_heuristic(sysm, sysm.parse_point(["2", "3"]))
        assert "independent" in verdict

    def test_monomial_dependent(self):
        sysm = MonomialSystem([[2, 1], [1, 1]])
        verdict = density_heuristic(sysm, sysm.parse_point(["2", "4"]))
        assert "relation" in verdict

    def test_labelled_heuristic(self):
        sysm = MonomialSystem([[2, 1], [1, 1]])
        assert density_heuristic(
            sysm, sysm.parse_point(["2", "3"])).startswith("heuristic")


class TestKSReport:
    def test_power_map(self):
        sysm = PowerSystem(2, 2)
        report = ks_report(sysm, MultiProjPoint.of((1, 2, 3)),
                           orbit_steps=10)
        assert report.lambda1.to_float() == pytest.approx(2)
        assert report.verdict == "EmpiricallyConsistent"
        assert report.canonical_alpha is None

    def test_monomial_map(self):
        sysm = MonomialSystem([[2, 1], [1, 1]])
        report = ks_report(sysm, sysm.parse_point(["2", "3"]),
                           orbit_steps=25)
        assert report.verdict == "EmpiricallyConsistent"
        assert report.lambda1.to_float() == pytest.approx(GOLDEN_SQ)

    def test_too_short_inconclusive(self):
        sysm = PowerSystem(2, 2)
        report = ks_report(sysm, MultiProjPoint.of((1, 2, 3)), orbit_steps=2)
        # ratio at N=2 is fine but root is far from lambda: inconclusive
        assert report.verdict in ("Inconclusive", "EmpiricallyConsistent")

    def test_product_fiber_inequality(self):
        left = PowerSystem(3, 1)
        right = MonomialSystem([[2, 1], [1, 1]])
        prod = ProductSystem(left, right)
        pt = (MultiProjPoint.of((2, 5)), right.parse_point(["2", "3"]))
        # the total-height ratio approaches max(3, 2.618...) like (2.618/3)^n,
        # so the 0.05 slack needs a few dozen iterates
        report = ks_report(prod, pt, orbit_steps=30)
        assert report.fiber_check is not None
        assert report.fiber_check["holds"]
        # lambda1 = max(3, golden_sq) = 3
        assert report.lambda1.to_float() == pytest.approx(3)


class TestForwardResidual:
    def test_power_residual_zero(self):
        # formal hhat_- = 0: the identity reduces to hhat(fP) = lambda hhat(P)
        # and telescopes exactly for power maps
        sysm = PowerSystem(2, 2)
        res = canonical_forward(sysm, MultiProjPoint.of((1, 2, 3)),
                                (Fraction(1),), Fraction(2), steps=8)
        residual = functional_equation_residual(sysm,
                                                MultiProjPoint.of((1, 2, 3)),
                                                res, 1)
        assert residual.contains_zero()
        assert residual.width < Fraction(1, 10**12)

    def test_backward_shift_rejected(self):
        sysm = PowerSystem(2, 2)
        res = canonical_forward(sysm, MultiProjPoint.of((1, 2, 3)),
                                (Fraction(1),), Fraction(2), steps=8)
        with pytest.raises(InvalidInput):
            functional_equation_residual(sysm, MultiProjPoint.of((1, 2, 3)),
                                         res, -1)
