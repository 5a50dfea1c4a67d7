import math

import numpy as np
from django.test import SimpleTestCase
from scipy import integrate

from gauges import (
    GaugeKind,
    b_coeff,
    ball_density_bound,
    f0_profile,
    fstar_profile,
    kl_M_bound,
    kl_M_choice,
    levenshtein_breakpoints,
    moments_f0,
    moments_fstar,
    moments_kl_asymptotic,
    moments_levenshtein,
)
from gauges.moments import GaugeMoments
from numerics import (
    DomainError,
    GaugeValidityError,
    InfeasibleGaugeError,
    jacobi_largest_root,
    log_ball_volume,
    log_sphere_area,
)

SQRT2 = math.sqrt(2)


def radial_log_moment(profile, j, pieces):
    total = sum(
        integrate.quad(lambda r: profile(r) * r ** (j - 1), a, b, epsabs=0.0, epsrel=1e-13)[0]
        for a, b in pieces
    )
    return log_sphere_area(j).log_value + math.log(total)


class BCoefficientTests(SimpleTestCase):
    def test_values(self):
        self.assertAlmostEqual(b_coeff(1), 0.0606602, delta=5e-8)
        self.assertAlmostEqual(b_coeff(2), 0.0620972, delta=5e-8)
        self.assertLess(abs(b_coeff(40)), 1e-6)

    def test_bounded_and_vanishing(self):
        values = [abs(b_coeff(j)) for j in range(1, 200)]
        self.assertTrue(all(v < 1 for v in values))
        self.assertLess(values[-1], 1e-20)

    def test_zero_index(self):
        with self.assertRaises(GaugeValidityError):
            b_coeff(0)


class ClassicalGaugeTests(SimpleTestCase):
    def test_fstar_low_moments(self):
        gauge = moments_fstar(5)
        self.assertEqual(gauge.kind, GaugeKind.FSTAR)
        self.assertEqual(gauge.support_radius, SQRT2)
        self.assertEqual(gauge.gauge_peak, 1.0)
        self.assertAlmostEqual(math.exp(gauge.log_moments[1]), 2.0, delta=1e-12)
        self.assertAlmostEqual(math.exp(gauge.log_moments[2]), math.pi * (1 + b_coeff(2)), delta=1e-12)
        self.assertAlmostEqual(math.exp(gauge.log_moments[2]), 3.3366757, delta=1e-6)

    def test_f0_low_moments(self):
        gauge = moments_f0(4)
        self.assertAlmostEqual(math.exp(gauge.log_moments[1]), 4 * SQRT2 / 3, delta=1e-12)
        self.assertAlmostEqual(math.exp(gauge.log_moments[2]), math.pi, delta=1e-12)

    def test_f0_ball_bound(self):
        self.assertAlmostEqual(math.exp(ball_density_bound(moments_f0(3)).log_value), 0.8838835, delta=1e-7)
        for n in range(1, 51):
            expected = math.log(n + 2) - 0.5 * (n + 2) * math.log(2)
            self.assertAlmostEqual(ball_density_bound(moments_f0(n)).log_value, expected, delta=1e-12 * abs(expected) + 1e-13)

    def test_fstar_matches_direct_quadrature(self):
        pieces = [(0, 2 - SQRT2), (2 - SQRT2, 1), (1, SQRT2)]
        gauge = moments_fstar(40)
        for j in range(1, 41):
            oracle = radial_log_moment(fstar_profile, j, pieces)
            self.assertAlmostEqual(gauge.log_moments[j], oracle, delta=1e-10)

    def test_f0_matches_direct_quadrature(self):
        gauge = moments_f0(30)
        for j in (1, 2, 7, 30):
            oracle = radial_log_moment(f0_profile, j, [(0, SQRT2)])
            self.assertAlmostEqual(gauge.log_moments[j], oracle, delta=1e-10)

    def test_fstar_dominates_f0(self):
        r = np.linspace(0, 2, 401)
        self.assertTrue(np.all(fstar_profile(r) >= f0_profile(r)))
        self.assertTrue(np.all(fstar_profile(r[r > SQRT2]) == 0))
        # equal up to rounding where b_j has vanished
        self.assertTrue(np.all(moments_fstar(300).log_moments[1:] >= moments_f0(300).log_moments[1:] - 1e-12))

    def test_large_dimension_is_finite(self):
        gauge = moments_fstar(1000)
        self.assertTrue(np.all(np.isfinite(gauge.log_moments)))


class MomentInvariantTests(SimpleTestCase):
    def test_moment_ratio_rejects_bad_vectors(self):
        log_moments = moments_f0(6).log_moments.copy()
        log_moments[4] += 5.0
        with self.assertRaises(GaugeValidityError):
            GaugeMoments(GaugeKind.F0, 6, SQRT2, log_moments)

    def test_peak_above_one_is_rejected(self):
        with self.assertRaises(GaugeValidityError):
            GaugeMoments(GaugeKind.F0, 1, SQRT2, np.array([0.5, 0.0]))

    def test_support_radius_must_be_finite(self):
        with self.assertRaises(GaugeValidityError):
            GaugeMoments(GaugeKind.F0, 1, math.inf, np.array([0.0, 0.0]))

    def test_all_kinds_build_up_to_1000(self):
        for n in (3, 40, 1000):
            moments_f0(n)
            moments_fstar(n)
            moments_kl_asymptotic(n, math.pi / 3)
        moments_levenshtein(40, math.pi / 2)


class SphericalCodeTests(SimpleTestCase):
    def test_degree_one_is_always_admissible_at_right_angle(self):
        self.assertEqual(jacobi_largest_root(1, 3.5), 0.0)
        for n in (3, 8, 10, 24):
            log_m, k, k_max = kl_M_choice(n, math.pi / 2, k_max=1)
            self.assertEqual((k, k_max), (1, 1))
            # 4·C(n−1, 1)/(1 − t_{1,2}) with t_{1,2} = 1/√(n)
            self.assertAlmostEqual(
                log_m.log_value, math.log(4 * (n - 1) / (1 - 1 / math.sqrt(n))), delta=1e-10, msg=f"n={n}"
            )

    def test_angle_on_a_jacobi_root_admits_that_degree(self):
        # n = 3 gives Legendre polynomials, so t_{1,2} = 1/√3
        phi = math.acos(1 / math.sqrt(3))
        self.assertTrue(math.isfinite(kl_M_bound(3, phi, k_max=2).log_value))
        _, k, _ = kl_M_choice(3, phi, k_max=2)
        self.assertEqual(k, 2)
        with self.assertRaises(InfeasibleGaugeError):
            kl_M_bound(3, phi, k_max=1)

    def test_octahedron_respected(self):
        log_m = kl_M_bound(3, math.pi / 2)
        self.assertGreaterEqual(log_m.log_value, math.log(6))
        self.assertAlmostEqual(log_m.log_value, math.log(8 / (1 - 1 / math.sqrt(3))), delta=1e-10)

    def test_leech_kissing_configuration_respected(self):
        log_m = kl_M_bound(24, math.pi / 3)
        self.assertTrue(math.isfinite(log_m.log_value))
        self.assertGreaterEqual(log_m.log_value, math.log(196560))

    def test_nonincreasing_in_angle(self):
        phis = np.linspace(math.pi / 3, math.pi, 40)
        values = [kl_M_bound(12, phi).log_value for phi in phis]
        self.assertTrue(all(a >= b for a, b in zip(values, values[1:])))
        self.assertTrue(all(v >= math.log(2) for v in values))

    def test_minimum_over_degrees(self):
        log_m, k, k_max = kl_M_choice(8, math.pi / 2)
        for other in range(1, 30):
            single = kl_M_bound(8, math.pi / 2, k_max=other)
            self.assertGreaterEqual(single.log_value, log_m.log_value - 1e-12)

    def test_infeasible_with_small_k_max(self):
        with self.assertRaises(InfeasibleGaugeError) as caught:
            kl_M_bound(30, math.pi / 3, k_max=1)
        self.assertEqual(caught.exception.k_max, 1)

    def test_domain(self):
        with self.assertRaises(DomainError):
            kl_M_bound(2, math.pi / 2)
        with self.assertRaises(DomainError):
            kl_M_bound(5, 0.0)

    def test_breakpoints_are_where_the_bound_drops(self):
        breakpoints = levenshtein_breakpoints(10)
        self.assertTrue(breakpoints)
        self.assertTrue(all(math.pi / 3 <= phi <= math.pi for phi in breakpoints))
        for phi in breakpoints:
            before = kl_M_bound(10, phi - 1e-6).log_value
            after = kl_M_bound(10, phi).log_value
            self.assertLess(after, before)


class LevenshteinGaugeTests(SimpleTestCase):
    def test_flat_angle_collapses_to_unit_ball(self):
        gauge = moments_levenshtein(8, math.pi)
        log_m = kl_M_bound(8, math.pi).log_value
        self.assertAlmostEqual(gauge.support_radius, 1.0, delta=1e-15)
        self.assertAlmostEqual(gauge.log_moments[8], log_ball_volume(8).log_value - log_m, delta=1e-12)
        self.assertAlmostEqual(gauge.log_moments[0], -log_m, delta=1e-15)

    def test_right_angle_radius(self):
        gauge = moments_levenshtein(8, math.pi / 2)
        self.assertAlmostEqual(gauge.support_radius, SQRT2, delta=1e-14)
        self.assertIsNotNone(gauge.degree)

    def test_constant_gauge_ratios(self):
        gauge = moments_levenshtein(12, 1.4)
        for j in range(1, 13):
            ratio = gauge.log_moments[j] - gauge.log_moments[j - 1]
            expected = (
                math.log(gauge.support_radius)
                + log_ball_volume(j).log_value
                - log_ball_volume(j - 1).log_value
            )
            self.assertAlmostEqual(ratio, expected, delta=1e-12)

    def test_validity_window(self):
        with self.assertRaises(GaugeValidityError):
            moments_levenshtein(8, 1.0)
        with self.assertRaises(DomainError):
            moments_levenshtein(2, math.pi / 2)


class AsymptoticGaugeTests(SimpleTestCase):
    def test_log_value(self):
        gauge = moments_kl_asymptotic(100, math.pi / 3)
        expected = 100 * (math.log(0.5) + 0.599 * math.log(2))
        self.assertAlmostEqual(gauge.log_moments[0], expected, delta=1e-10)
        self.assertAlmostEqual(gauge.log_moments[0], -27.79, delta=0.01)
        self.assertFalse(gauge.rigorous)

    def test_large_dimension(self):
        gauge = moments_kl_asymptotic(1000, math.pi / 3)
        self.assertAlmostEqual(gauge.log_moments[0], -277.9, delta=0.1)
        self.assertTrue(np.all(np.isfinite(gauge.log_moments)))
        self.assertAlmostEqual(gauge.support_radius, 2.0, delta=1e-14)

    def test_ball_bound_rate(self):
        gauge = moments_kl_asymptotic(200, math.pi / 3)
        self.assertAlmostEqual(ball_density_bound(gauge).log_value, -0.599 * 200 * math.log(2), delta=1e-9)

    def test_window(self):
        outside = 2 * math.asin(2**-0.599)
        with self.assertRaises(GaugeValidityError):
            moments_kl_asymptotic(50, outside)
        with self.assertRaises(DomainError):
            moments_kl_asymptotic(50, math.radians(59))
        moments_kl_asymptotic(50, math.radians(63))
