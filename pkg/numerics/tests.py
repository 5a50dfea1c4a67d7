import math

import numpy as np
from django.test import SimpleTestCase
from scipy import integrate, special

from numerics import (
    DomainError,
    LogNonNeg,
    NumericalError,
    QuadratureError,
    QuadratureSpec,
    Sign,
    gauss_like_cdf,
    jacobi_eval,
    jacobi_largest_root,
    jacobi_largest_roots,
    log_ball_volume,
    log_binomial,
    log_gamma_fn,
    log_gauss_like_cdf,
    log_integral_exp,
    log_sphere_area,
    signed_log_difference,
)


class LogNonNegTests(SimpleTestCase):
    def test_round_trip(self):
        for x in (1e-300, 3.5e-17, 1.0, 42.0, 7.1e123, 1e300):
            # exp amplifies the rounding of ln x by |ln x|
            tolerance = 4 * np.finfo(float).eps * max(1.0, abs(math.log(x)))
            self.assertAlmostEqual(LogNonNeg.from_real(x).to_real() / x, 1.0, delta=tolerance)

    def test_zero_and_one_are_exact_identities(self):
        a = LogNonNeg.from_real(123.456)
        self.assertEqual(a + LogNonNeg.zero(), a)
        self.assertEqual(a * LogNonNeg.one(), a)
        self.assertTrue((a * LogNonNeg.zero()).is_zero)

    def test_add_matches_real_sum(self):
        rng = np.random.default_rng(20240607)
        for x, y in rng.uniform(0, 1e6, size=(200, 2)):
            total = (LogNonNeg.from_real(x) + LogNonNeg.from_real(y)).to_real()
            self.assertAlmostEqual(total / (x + y), 1.0, delta=1e-13)

    def test_add_commutes_and_associates(self):
        a, b, c = (LogNonNeg.from_real(v) for v in (2.5, 1e-7, 3e5))
        self.assertAlmostEqual((a + b).log_value, (b + a).log_value, delta=1e-14)
        self.assertAlmostEqual(((a + b) + c).log_value, (a + (b + c)).log_value, delta=1e-14)

    def test_rejects_negative_and_nan(self):
        with self.assertRaises(DomainError):
            LogNonNeg.from_real(-1.0)
        with self.assertRaises(DomainError):
            LogNonNeg(float("nan"))

    def test_division_by_zero(self):
        with self.assertRaises(DomainError):
            LogNonNeg.one() / LogNonNeg.zero()


class SignedDifferenceTests(SimpleTestCase):
    def test_signs(self):
        self.assertEqual(signed_log_difference(math.log(3), math.log(2))[1], Sign.POSITIVE)
        self.assertEqual(signed_log_difference(math.log(2), math.log(3))[1], Sign.NEGATIVE)

    def test_relative_value(self):
        relative, _ = signed_log_difference(math.log(4), math.log(1))
        self.assertAlmostEqual(relative, 0.75, places=14)

    def test_cancellation_is_indeterminate(self):
        relative, sign = signed_log_difference(1000.0, 1000.0 + 1e-12)
        self.assertEqual(sign, Sign.INDETERMINATE)
        self.assertLess(abs(relative), 1e-8)


class SpecialFunctionTests(SimpleTestCase):
    def test_log_gamma(self):
        self.assertEqual(log_gamma_fn(1.0), 0.0)
        self.assertAlmostEqual(log_gamma_fn(0.5), 0.5723649429247001, places=13)
        self.assertAlmostEqual(log_gamma_fn(13.0), math.log(math.factorial(12)), places=12)

    def test_log_gamma_domain(self):
        for bad in (0.0, -2.0, math.inf, math.nan):
            with self.assertRaises(DomainError):
                log_gamma_fn(bad)

    def test_ball_volumes(self):
        self.assertEqual(log_ball_volume(0).log_value, 0.0)
        self.assertAlmostEqual(log_ball_volume(2).log_value, math.log(math.pi), places=14)
        self.assertAlmostEqual(log_ball_volume(3).log_value, 1.4324119583011810, places=13)

    def test_sphere_areas(self):
        self.assertAlmostEqual(log_sphere_area(1).log_value, math.log(2), places=14)
        self.assertAlmostEqual(log_sphere_area(2).log_value, math.log(2 * math.pi), places=14)
        self.assertAlmostEqual(log_sphere_area(3).log_value, math.log(4 * math.pi), places=14)
        with self.assertRaisesMessage(DomainError, "dimension must be ≥ 1"):
            log_sphere_area(0)

    def test_gauss_like_cdf(self):
        self.assertEqual(gauss_like_cdf(0.0), 0.0)
        self.assertAlmostEqual(gauss_like_cdf(1.0), 0.8427007929497149, places=15)
        self.assertLess(1.0 - gauss_like_cdf(6.0), 1e-15)
        with self.assertRaises(DomainError):
            gauss_like_cdf(-0.1)

    def test_log_gauss_like_cdf_is_stable(self):
        self.assertEqual(log_gauss_like_cdf(0.0), -math.inf)
        small = log_gauss_like_cdf(1e-200)
        self.assertAlmostEqual(small, math.log(2 / math.sqrt(math.pi)) + math.log(1e-200), places=10)
        self.assertAlmostEqual(log_gauss_like_cdf(4.0), math.log1p(-special.erfc(4.0)), places=15)
        self.assertLess(log_gauss_like_cdf(6.0), 0.0)

    def test_log_binomial(self):
        self.assertEqual(log_binomial(5, 0).log_value, 0.0)
        self.assertAlmostEqual(log_binomial(10, 3).log_value, math.log(120), places=13)
        exact = math.log(math.comb(1000, 500))
        self.assertAlmostEqual(log_binomial(1000, 500).log_value / exact, 1.0, delta=1e-12)
        with self.assertRaises(DomainError):
            log_binomial(3, 4)


class QuadratureTests(SimpleTestCase):
    def test_gaussian(self):
        result = log_integral_exp(lambda x: -(x**2), 0.0)
        self.assertAlmostEqual(result.log_value, math.log(math.sqrt(math.pi) / 2), delta=1e-12)

    def test_exponential(self):
        result = log_integral_exp(lambda x: -2.0 * x, 0.0)
        self.assertAlmostEqual(result.log_value, math.log(0.5), delta=1e-12)

    def test_outer_angle_shaped_integrand(self):
        def g(x):
            return -4.0 * x**2 + 3.0 * log_gauss_like_cdf(x)

        result = log_integral_exp(g, 0.0)
        refined = log_integral_exp(g, 0.0, QuadratureSpec(panel_count=256, nodes_per_panel=40))
        oracle, _ = integrate.quad(
            lambda x: math.exp(-4.0 * x * x) * math.erf(x) ** 3, 0.0, 12.0,
            epsabs=0.0, epsrel=1e-13, limit=200,
        )
        self.assertAlmostEqual(result.log_value, refined.log_value, delta=1e-12)
        self.assertAlmostEqual(math.exp(result.log_value) / oracle, 1.0, delta=1e-10)

    def test_peak_away_from_lower_limit(self):
        # ∫ exp(−(x−30)²) over the real line
        result = log_integral_exp(lambda x: -((x - 30.0) ** 2), 0.0)
        self.assertAlmostEqual(result.log_value, 0.5 * math.log(math.pi), delta=1e-12)

    def test_non_decaying_integrand_fails(self):
        with self.assertRaises(QuadratureError):
            log_integral_exp(lambda x: 0.0 * x, 0.0)

    def test_spec_fingerprint_changes_with_fields(self):
        spec = QuadratureSpec()
        self.assertNotEqual(spec.fingerprint, spec.doubled().fingerprint)
        self.assertEqual(spec.doubled().panel_count, 64)
        with self.assertRaises(DomainError):
            QuadratureSpec(panel_count=0)


class JacobiTests(SimpleTestCase):
    def test_low_degrees(self):
        self.assertEqual(jacobi_eval(0, 3.7, 0.3), 1.0)
        self.assertAlmostEqual(jacobi_eval(1, 2.0, 0.5), 1.5, places=15)

    def test_chebyshev_zero(self):
        self.assertLess(abs(jacobi_eval(4, -0.5, math.cos(math.pi / 8))), 1e-12)

    def test_matches_scipy_values(self):
        for k, alpha, x in ((7, 0.0, 0.31), (25, 1.0, -0.8), (60, 23.5, 0.95)):
            expected = special.eval_jacobi(k, alpha, alpha, x)
            self.assertAlmostEqual(jacobi_eval(k, alpha, x) / expected, 1.0, delta=1e-10)

    def test_large_degree_keeps_sign_structure(self):
        # P_600 at x = 1 is about 1e220, past the renormalization threshold
        root = jacobi_largest_root(600, 248.5)
        self.assertLess(jacobi_eval(600, 248.5, root - 1e-7), 0.0)
        self.assertGreater(jacobi_eval(600, 248.5, root + 1e-7), 0.0)
        self.assertTrue(math.isfinite(jacobi_eval(600, 248.5, 1.0)))

    def test_domain(self):
        with self.assertRaises(DomainError):
            jacobi_eval(3, -1.0, 0.2)
        with self.assertRaises(DomainError):
            jacobi_largest_root(0, 1.0)

    def test_largest_roots(self):
        self.assertEqual(jacobi_largest_root(1, 7.0), 0.0)
        self.assertAlmostEqual(jacobi_largest_root(2, -0.5), math.cos(math.pi / 4), delta=1e-12)
        oracle = special.roots_jacobi(3, 1.0, 1.0)[0].max()
        self.assertAlmostEqual(jacobi_largest_root(3, 1.0), oracle, delta=1e-10)

    def test_against_eigenvalue_oracle(self):
        for alpha in (0.0, 1.0, 23.5):
            for k in (5, 17, 40):
                oracle = special.roots_jacobi(k, alpha, alpha)[0].max()
                self.assertAlmostEqual(jacobi_largest_root(k, alpha), oracle, delta=1e-11)

    def test_interlacing_and_sign_change(self):
        for alpha in (0.0, 1.0, 23.5, 248.5):
            roots = jacobi_largest_roots(200, alpha)
            self.assertTrue(all(a < b for a, b in zip(roots, roots[1:])))
            self.assertLess(roots[-1], 1.0)
            for k in (2, 50, 200):
                t = roots[k - 1]
                self.assertLess(jacobi_eval(k, alpha, t - 1e-9), 0.0)
                self.assertGreater(jacobi_eval(k, alpha, t + 1e-9), 0.0)

    def test_numerical_error_is_arithmetic(self):
        self.assertTrue(issubclass(NumericalError, ArithmeticError))
