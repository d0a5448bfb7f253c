"""End-to-end tests on the shipped Wehler (2,2,2) configuration."""

import os
from fractions import Fraction

import pytest

from dynheights import _linalg
from dynheights.canonical import (
    canonical_pair,
    functional_equation_residual,
    hhat_at,
    one_step_ratio,
    periodicity_test,
)
from dynheights.configio import (
    build_system,
    config_cone,
    config_gram_form,
    config_point,
    load_config,
)
from dynheights.exactreal import (
    IntPolynomial,
    Order,
    compare,
    compare_with_rational,
    isolate_real_roots,
)
from dynheights.heights import MultiProjPoint, MultiProjSpace
from dynheights.lattice import (
    check_form_multiplicativity,
    condition_A,
    condition_B,
    eigenvector_pair,
    middle_index_ell,
    spectral_radius,
)
from dynheights.systems import WEHLER_GRAM, WEHLER_INVOLUTION_MATRICES

CONFIG_PATH = os.path.join(os.path.dirname(__file__), "..", "configs",
                           "wehler_222.json")
CAP = 20 * 10**6


@pytest.fixture(scope="module")
def wehler():
    config = load_config(CONFIG_PATH)
    system = build_system(config)
    cone = config_cone(config)
    form = config_gram_form(config)
    return config, system, cone, form


@pytest.fixture(scope="module")
def pair(wehler):
    _, system, cone, _ = wehler
    return eigenvector_pair(system.pullback_matrix(), cone)


@pytest.fixture(scope="module")
def sample_result(wehler, pair):
    config, system, _, _ = wehler
    sample = config_point(system, config, "sample")
    return sample, canonical_pair(system, sample, pair, steps=8,
                                  coord_cap_bits=CAP)


class TestShippedInvariants:
    def test_involution_matrices_machine_checked(self):
        gram = [list(r) for r in WEHLER_GRAM]
        for m in WEHLER_INVOLUTION_MATRICES:
            m = [list(r) for r in m]
            assert _linalg.mat_mul(m, m) == _linalg.identity(3)
            mt = _linalg.transpose(m)
            assert _linalg.mat_mul(_linalg.mat_mul(mt, gram), m) == gram

    def test_config_points_on_surface(self, wehler):
        config, system, _, _ = wehler
        for name in config["points"]:
            assert system.on_surface(config_point(system, config, name))

    def test_pullback_is_isometry_of_gram(self, wehler):
        _, system, _, form = wehler
        assert check_form_multiplicativity(system.pullback_matrix(), form)


class TestSpectralData:
    def test_characteristic_polynomial(self, wehler):
        _, system, _, _ = wehler
        cp = _linalg.charpoly(system.pullback_matrix().rows())
        assert cp == [1, -17, -17, 1]
        factored = IntPolynomial.of(cp).divexact(IntPolynomial.of([1, 1]))
        assert factored.coeffs == (1, -18, 1)

    def test_lambda_enclosure(self, wehler):
        _, system, _, _ = wehler
        rho = spectral_radius(system.pullback_matrix())
        tight = rho.refined(Fraction(1, 10**12))
        assert tight.hi - tight.lo <= Fraction(1, 10**12)
        target = isolate_real_roots(IntPolynomial.of([1, -18, 1]))[-1]
        assert compare(rho, target) == Order.Equal

    def test_parabolic_word(self, wehler):
        config, _, _, _ = wehler
        from dynheights.systems import WehlerSystem
        parabolic = WehlerSystem(config["coeffs"], (1, 2))
        rho = spectral_radius(parabolic.pullback_matrix())
        assert compare_with_rational(rho, 1) == Order.Equal


class TestConditions:
    def test_condition_a(self, wehler):
        _, system, _, _ = wehler
        report = condition_A(system.pullback_matrix())
        assert report.holds
        assert compare(report.lambda_plus, report.lambda_minus) == Order.Equal

    def test_isotropy_refinable(self, wehler, pair):
        import dynheights._numberfield as nf
        _, _, _, form = wehler
        lam, plus, minus = pair.common_field()
        q_plus = form.evaluate_ring([plus, plus], lam.poly)
        assert nf.value_sign(q_plus, lam) == 0
        for digits in (8, 12, 16):
            box = nf.value_interval(q_plus, lam, Fraction(1, 10**digits))
            assert box.contains_zero()
            assert box.width <= Fraction(1, 10**digits)

    def test_condition_b_positive(self, wehler, pair):
        _, _, cone, form = wehler
        report = condition_B(form, pair, cone)
        assert report.verdict == "True"
        assert report.self_intersection.strictly_positive()

    def test_middle_index(self, wehler, pair):
        _, _, _, form = wehler
        report = middle_index_ell(form, pair)
        assert report.ell == 1
        assert report.identity_holds


class TestCanonicalHeights:
    def test_samples_positive(self, sample_result):
        _, result = sample_result
        assert result.hhat_plus.strictly_positive()
        assert result.hhat_minus.strictly_positive()
        assert result.hhat.lo > 0

    def test_frozen_sample_values(self, sample_result):
        # regression pin: depth-8 estimates of the shipped sample point,
        # frozen from the first verified run
        _, result = sample_result
        assert abs(float(result.hhat_plus.midpoint)
                   - 0.0005276362518409699) < 1e-12
        assert abs(float(result.hhat_minus.midpoint)
                   - 0.0005922553143122866) < 1e-12
        assert float(result.error_bound) < 2e-9

    def test_residuals_contain_zero(self, wehler, sample_result):
        _, system, _, _ = wehler
        sample, result = sample_result
        scale = max(Fraction(1), result.hhat.hi)
        for n in (0, 1, -1, 2, -2):
            residual = functional_equation_residual(system, sample, result, n)
            assert residual.contains_zero()
            assert residual.width <= Fraction(1, 1000) * scale

    def test_equivariance_ratio_overlaps_lambda(self, sample_result):
        _, result = sample_result
        ratio = one_step_ratio(result)
        assert ratio.intersects(result._lam_box)

    def test_shifted_heights_scale(self, sample_result):
        # hhat(f P) ~ between lambda^-1 and lambda times hhat(P): both
        # components move reciprocally
        _, result = sample_result
        shifted = hhat_at(result, 1)
        assert shifted.strictly_positive()

    def test_fixed_point_zero(self, wehler, pair):
        config, system, _, _ = wehler
        fixed = config_point(system, config, "fixed")
        verdict = periodicity_test(system, fixed, 60, 6)
        assert verdict.kind == "Periodic" and verdict.period == 1
        result = canonical_pair(system, fixed, pair, steps=8,
                                coord_cap_bits=CAP)
        assert result.hhat.widened(result.error_bound).contains_zero()

    def test_sample_not_periodic(self, wehler):
        config, system, _, _ = wehler
        sample = config_point(system, config, "sample")
        verdict = periodicity_test(system, sample, 60, 6)
        assert verdict.kind == "NotPeriodic"

    def test_orbit_reversibility(self, wehler):
        config, system, _, _ = wehler
        sample = config_point(system, config, "sample")
        inverse = system.inverse_system()
        assert inverse.apply(system.apply(sample)) == sample
        assert system.apply(inverse.apply(sample)) == sample


def harvest_surface_points(system, xy_bound):
    """On-surface points found by solving the z-fiber quadratic exactly."""
    import gmpy2

    from dynheights.heights import enumerate_bounded_points

    found = []
    seen = set()
    for xy in enumerate_bounded_points(MultiProjSpace((1, 1)), xy_bound):
        x, y = xy.coords
        probe = MultiProjPoint.of(x, y, (0, 1))
        a, b, c = system._fiber_quadratic(probe, 2)
        disc = b * b - 4 * a * c
        if disc < 0 or a == 0:
            continue
        root, exact = gmpy2.iroot(gmpy2.mpz(disc), 2)
        if not exact:
            continue
        for sign in (1, -1):
            z = (-b + sign * int(root), 2 * a)
            if z == (0, 0):
                continue
            point = MultiProjPoint.of(x, y, z)
            if point.coords not in seen and system.on_surface(point):
                seen.add(point.coords)
                found.append(point)
    return found


class TestInvolutionIdentities:
    def test_sigma_squared_is_identity_on_many_points(self, wehler):
        from dynheights.errors import DegenerateFiber

        _, system, _, _ = wehler
        points = harvest_surface_points(system, 5)
        assert len(points) >= 50
        checked = 0
        for point in points:
            for which in (1, 2, 3):
                # fibers whose quadratic degenerates abort by design: a
                # conjugate root at infinity cannot be inverted by the
                # product/sum formulas, and aborting beats guessing
                try:
                    image = system.apply_involution(point, which)
                    assert system.on_surface(image)
                    back = system.apply_involution(image, which)
                except DegenerateFiber:
                    continue
                assert back == point
                checked += 1
        assert checked >= 100
