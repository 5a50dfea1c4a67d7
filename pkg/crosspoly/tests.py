import math
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from crosspoly import (
    GammaCache,
    bh_gamma_asymptotic,
    inradius_xn,
    intrinsic_volumes,
    log_outer_angle,
    log_volume_xn,
)
from crosspoly.cache import HEADER
from numerics import DomainError, QuadratureSpec


def gamma(n, j, spec=None):
    return math.exp(log_outer_angle(n, j, spec).log_value)


class GeometryTests(SimpleTestCase):
    def test_volume(self):
        self.assertAlmostEqual(log_volume_xn(1).log_value, math.log(2), places=14)
        self.assertAlmostEqual(log_volume_xn(3).log_value, math.log(4 / 3), places=14)
        exact = 24 * math.log(2) - math.log(math.factorial(24))
        self.assertAlmostEqual(log_volume_xn(24).log_value, exact, places=11)

    def test_inradius(self):
        self.assertEqual(inradius_xn(1), 1.0)
        self.assertEqual(inradius_xn(4), 0.5)
        self.assertAlmostEqual(inradius_xn(100), 0.1, places=15)

    def test_dimension_zero(self):
        with self.assertRaisesMessage(DomainError, "dimension must be ≥ 1"):
            log_volume_xn(0)
        with self.assertRaises(DomainError):
            inradius_xn(0)


class OuterAngleTests(SimpleTestCase):
    def test_facet_angle_is_half(self):
        for n in range(2, 201):
            self.assertAlmostEqual(gamma(n, n - 1), 0.5, delta=1e-10)

    def test_ridge_angle_closed_form(self):
        # arccos(1/2)/(2π)
        self.assertAlmostEqual(gamma(4, 2), 1 / 6, delta=1e-10)
        for n in range(3, 201):
            expected = math.acos(1 - 2 / n) / (2 * math.pi)
            self.assertAlmostEqual(gamma(n, n - 2), expected, delta=1e-8)

    def test_vertex_angle_closed_form(self):
        for n in (2, 3, 7, 24, 100, 500):
            self.assertAlmostEqual(gamma(n, 0) * 2 * n, 1.0, delta=1e-10)

    def test_octahedron_vertex_by_sampling(self):
        # a direction lies in the normal cone at e1 iff e1 maximizes <u, v> over the vertices
        rng = np.random.default_rng(7)
        u = rng.standard_normal((400_000, 3))
        inside = (u[:, 0] > np.abs(u[:, 1])) & (u[:, 0] > np.abs(u[:, 2]))
        self.assertAlmostEqual(gamma(3, 0), inside.mean(), delta=3e-3)

    def test_decreasing_in_dimension(self):
        for j in (0, 1, 3):
            values = [gamma(n, j) for n in range(j + 2, j + 51)]
            self.assertTrue(all(a > b for a, b in zip(values, values[1:])))

    def test_face_dimension_range(self):
        with self.assertRaises(DomainError):
            log_outer_angle(5, 5)
        with self.assertRaises(DomainError):
            log_outer_angle(5, -1)

    def test_asymptotic_approximant(self):
        for n in (2, 10, 1000):
            self.assertAlmostEqual(bh_gamma_asymptotic(n, 0), 1 / (2 * n), places=15)
        self.assertAlmostEqual(bh_gamma_asymptotic(1000, 0), 5e-4, places=15)
        direct = 0.5 * (2 / math.sqrt(2)) * math.sqrt(math.pi * math.log(1000)) / 1000**2
        self.assertAlmostEqual(bh_gamma_asymptotic(1000, 1) / direct, 1.0, delta=1e-13)
        ratio = bh_gamma_asymptotic(1000, 1) / gamma(1000, 1)
        self.assertTrue(0.5 < ratio < 2.0, ratio)


class IntrinsicVolumesTests(SimpleTestCase):
    def test_octahedron(self):
        iv = intrinsic_volumes(3)
        self.assertEqual(iv.log_v[0], 0.0)
        self.assertAlmostEqual(iv.log_v[2], math.log(2 * math.sqrt(3)), delta=1e-10)
        self.assertAlmostEqual(iv.log_v[3], math.log(4 / 3), places=14)

    def test_boundary_slots(self):
        for n in (5, 24, 60):
            iv = intrinsic_volumes(n)
            facet = (n - 1) * math.log(2) + 0.5 * math.log(n) - math.lgamma(n)
            self.assertAlmostEqual(iv.log_v[n - 1], facet, delta=1e-10)
            self.assertEqual(iv.v(n).log_value, log_volume_xn(n).log_value)
            self.assertTrue(np.all(iv.log_gamma_angles <= math.log(0.5) + 1e-10))

    def test_against_refined_quadrature(self):
        refined = QuadratureSpec(panel_count=128, nodes_per_panel=40, convergence_tolerance=1e-13)
        coarse = intrinsic_volumes(10)
        fine = intrinsic_volumes(10, refined)
        np.testing.assert_allclose(coarse.log_v[1:], fine.log_v[1:], rtol=0, atol=1e-10)
        # loose diagnostic only: V₁ grows like √(π ln n)
        self.assertTrue(1.0 < math.exp(coarse.log_v[1]) / math.sqrt(math.pi * math.log(10)) < 4.0)

    def test_doubled_panels_agree(self):
        spec = QuadratureSpec()
        a = intrinsic_volumes(40, spec)
        b = intrinsic_volumes(40, spec.doubled())
        np.testing.assert_allclose(a.log_v, b.log_v, rtol=0, atol=1e-10)

    def test_table_is_read_only(self):
        iv = intrinsic_volumes(4)
        with self.assertRaises(ValueError):
            iv.log_v[1] = 0.0


class GammaCacheTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.path = Path(self.directory.name) / "gamma_cache.csv"

    def tearDown(self):
        self.directory.cleanup()

    def test_round_trip_is_bit_identical(self):
        cache = GammaCache(self.path)
        fresh = intrinsic_volumes(12, cache=cache)
        cache.save()
        self.assertTrue(self.path.read_text().startswith(HEADER + "\n"))

        reloaded = GammaCache.load(self.path)
        self.assertEqual(reloaded.entries, cache.entries)
        warm = intrinsic_volumes(12, cache=reloaded)
        self.assertEqual(reloaded.hits, 12)
        self.assertEqual(warm.log_v.tobytes(), fresh.log_v.tobytes())

    def test_fingerprint_mismatch_is_a_miss(self):
        cache = GammaCache(self.path)
        log_outer_angle(6, 2, QuadratureSpec(), cache)
        self.assertIsNone(cache.get(6, 2, QuadratureSpec().doubled().fingerprint))
        self.assertIsNotNone(cache.get(6, 2, QuadratureSpec().fingerprint))

    def test_clear_removes_file(self):
        cache = GammaCache(self.path)
        log_outer_angle(4, 1, cache=cache)
        cache.save()
        self.assertEqual(cache.clear(), 1)
        self.assertFalse(self.path.exists())
        self.assertEqual(len(GammaCache.load(self.path)), 0)

    def test_malformed_lines_are_skipped(self):
        self.path.write_text(HEADER + "\n3,1,-1.5,v1\nnot,a,line\n")
        with self.assertLogs("crosspoly.cache", level="WARNING"):
            cache = GammaCache.load(self.path)
        self.assertEqual(cache.entries, {(3, 1, "v1"): -1.5})

    def test_summary(self):
        cache = GammaCache(self.path)
        intrinsic_volumes(5, cache=cache)
        summary = cache.summary()
        self.assertEqual(summary["entries"], 5)
        self.assertEqual((summary["min_n"], summary["max_n"]), (5, 5))
