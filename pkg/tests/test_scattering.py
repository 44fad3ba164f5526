"""Tests for reflection and transmission through the barrier."""

import math
import unittest

import numpy as np
import pytest

from bic1d.entities.params import make_params
from bic1d.entities.states import ScatterPoint, ScatterScan
from bic1d.managers.scattering_manager import ScatteringManager, rt_coefficients, rt_scan
from bic1d.oracle.travelling_wave import rt_by_integration
from bic1d.utils.errors import InvalidParameterError

INTEGER_ORDER_ENERGIES = [49.0, 46.0, 41.0, 34.0, 25.0, 14.0, 1.0]


class TestRtCoefficients(unittest.TestCase):
    """Test cases for single-energy R and T."""

    def setUp(self):
        self.p = make_params(50, 1, 1)
        self.manager = ScatteringManager(self.p, n_jobs=1)

    def test_conservation_below_barrier_top(self):
        """R + T = 1 below V0."""
        for energy in (0.5, 10.0, 23.7, 47.3):
            point = self.manager.rt_coefficients(energy)
            self.assertAlmostEqual(point.conservation, 1.0, delta=1e-8)

    def test_conservation_above_barrier_top(self):
        """R + T = 1 above V0 on the complex-order path."""
        for energy in (50.5, 60.0, 80.0):
            point = self.manager.rt_coefficients(energy)
            self.assertAlmostEqual(point.conservation, 1.0, delta=1e-8)
            self.assertTrue(0.0 < point.t_prob < 1.0)

    def test_integer_order_is_finite(self):
        """Integer kappa a still gives finite 0 < T < 1."""
        point = rt_coefficients(self.p, 49.0)
        self.assertTrue(0.0 < point.t_prob < 1.0)
        self.assertAlmostEqual(point.conservation, 1.0, delta=1e-8)

    def test_integer_order_continuity(self):
        """R at integer kappa a matches the average of its neighbours."""
        for energy in INTEGER_ORDER_ENERGIES:
            r = self.manager.rt_coefficients(energy).r_prob
            below = self.manager.rt_coefficients(energy - 0.01).r_prob
            above = self.manager.rt_coefficients(energy + 0.01).r_prob
            self.assertTrue(math.isfinite(r))
            self.assertLess(abs(r - 0.5 * (below + above)), 1e-3, msg=f"E={energy}")

    def test_continuity_at_barrier_top(self):
        """Real- and imaginary-order paths agree at E = V0."""
        below = self.manager.rt_coefficients(50.0 - 1e-6).r_prob
        above = self.manager.rt_coefficients(50.0 + 1e-6).r_prob
        at = self.manager.rt_coefficients(50.0).r_prob
        self.assertLess(abs(below - above), 1e-5)
        self.assertLess(abs(at - below), 1e-5)

    def test_incidence_symmetry(self):
        """Left and right incidence give the same R and T."""
        for energy in (3.0, 28.0, 55.0):
            left = self.manager.rt_coefficients(energy, 'left')
            right = self.manager.rt_coefficients(energy, 'right')
            self.assertAlmostEqual(left.r_prob, right.r_prob, delta=1e-10)
            self.assertAlmostEqual(left.t_prob, right.t_prob, delta=1e-10)
            self.assertEqual(right.incidence, 'right')

    def test_invalid_input(self):
        """Non-positive energy and unknown incidence are rejected."""
        for energy in (0.0, -1.0, math.nan):
            with self.assertRaises(InvalidParameterError):
                self.manager.rt_coefficients(energy)
        with self.assertRaises(InvalidParameterError):
            self.manager.rt_coefficients(10.0, 'top')


class TestRtScan(unittest.TestCase):
    """Test cases for energy scans and a-sweeps."""

    @classmethod
    def setUpClass(cls):
        cls.p = make_params(50, 1, 1)
        cls.scan = rt_scan(cls.p, 0.5, 49.5, 200)

    def test_scan_grid(self):
        """Uniform grid, every point ok and in order."""
        self.assertEqual(len(self.scan), 200)
        self.assertEqual(self.scan.failures, [])
        energies = [point.energy for point in self.scan]
        np.testing.assert_allclose(energies, np.linspace(0.5, 49.5, 200))
        self.assertEqual(self.scan.success_fraction, 1.0)

    def test_scan_conservation(self):
        """R + T = 1 at every grid point."""
        for point in self.scan:
            self.assertAlmostEqual(point.conservation, 1.0, delta=1e-8)

    def test_no_zeros(self):
        """Neither R nor T reaches zero on the scan."""
        self.assertGreater(min(point.r_prob for point in self.scan), 1e-6)
        self.assertGreater(min(point.t_prob for point in self.scan), 1e-6)
        self.assertLess(max(point.t_prob for point in self.scan), 1.0)

    def test_threaded_scan_matches(self):
        """Threaded scans keep the grid order and the values."""
        serial = ScatteringManager(self.p, n_jobs=1).rt_scan(1.0, 40.0, 12)
        threaded = ScatteringManager(self.p, n_jobs=3).rt_scan(1.0, 40.0, 12)
        self.assertEqual([pt.r_prob for pt in serial], [pt.r_prob for pt in threaded])

    def test_invalid_scan(self):
        """Bad ranges and step counts are rejected."""
        manager = ScatteringManager(self.p, n_jobs=1)
        with self.assertRaises(InvalidParameterError):
            manager.rt_scan(10.0, 5.0, 10)
        with self.assertRaises(InvalidParameterError):
            manager.rt_scan(0.0, 5.0, 10)
        with self.assertRaises(InvalidParameterError):
            manager.rt_scan(1.0, 5.0, 1)

    def test_a_sweep(self):
        """Smoother barriers reflect less at E = 10."""
        sweep = ScatteringManager(self.p, n_jobs=1).rt_a_sweep(10.0, [0.5, 1.0, 2.0, 5.0])
        self.assertEqual([point.a for point in sweep], [0.5, 1.0, 2.0, 5.0])
        for point in sweep:
            self.assertAlmostEqual(point.conservation, 1.0, delta=1e-8)
        self.assertLess(sweep[3].r_prob, sweep[0].r_prob)

    def test_failures_are_flagged(self):
        """A failing point is kept as a flagged row, not raised."""
        manager = ScatteringManager(self.p, n_jobs=1)
        scan = manager.rt_a_sweep(10.0, [1.0, -1.0])
        self.assertEqual(len(scan), 1)
        self.assertEqual(scan.attempted, 2)
        self.assertEqual(scan.failures[0].status, 'InvalidParameterError')
        self.assertTrue(math.isnan(scan.failures[0].r_prob))
        self.assertEqual([row.a for row in scan.all_rows()], [-1.0, 1.0])

    @pytest.mark.slow
    def test_wide_barrier_scan(self):
        """a = 5 scan conserves probability across many integer orders."""
        scan = rt_scan(make_params(50, 5, 1), 0.5, 49.5, 100)
        self.assertEqual(scan.failures, [])
        for point in scan:
            self.assertAlmostEqual(point.conservation, 1.0, delta=1e-8)


class TestAgainstTravellingWave(unittest.TestCase):
    """Hankel matching at x = 0 against a complex ODE solve through the barrier."""

    def setUp(self):
        self.p = make_params(50, 1, 1)

    def assert_same_rt(self, p, energy, incidence='left'):
        matched = rt_coefficients(p, energy, incidence)
        integrated = rt_by_integration(p, energy, incidence)
        msg = f"V0={p.v0}, a={p.a}, E={energy}, {incidence}"
        self.assertAlmostEqual(matched.r_prob, integrated.r_prob, delta=1e-6, msg=msg)
        self.assertAlmostEqual(matched.t_prob, integrated.t_prob, delta=1e-6, msg=msg)
        self.assertAlmostEqual(integrated.conservation, 1.0, delta=1e-6, msg=msg)

    def test_below_barrier_top(self):
        """Real orders well inside the continuum window."""
        for energy in (5.0, 28.0, 49.5):
            self.assert_same_rt(self.p, energy)

    def test_integer_order(self):
        """kappa a = 2 exactly, where the matching nudges the order."""
        self.assert_same_rt(self.p, 46.0)
        self.assert_same_rt(self.p, 46.0 + 1e-7)

    def test_above_barrier_top(self):
        """Imaginary order above V0."""
        for energy in (55.0, 70.0):
            self.assert_same_rt(self.p, energy)

    def test_other_barriers(self):
        """Narrower and lower barriers."""
        self.assert_same_rt(make_params(50, 0.5, 1), 20.0)
        self.assert_same_rt(make_params(20, 0.3, 1), 10.0)

    def test_right_incidence(self):
        """Incidence from the right integrates from the left edge."""
        point = rt_by_integration(self.p, 28.0, 'right')
        self.assertEqual(point.incidence, 'right')
        self.assert_same_rt(self.p, 28.0, 'right')

    def test_invalid_input(self):
        """The integrator rejects what rt_coefficients rejects."""
        for energy in (0.0, -1.0, math.nan, math.inf):
            with self.assertRaises(InvalidParameterError):
                rt_by_integration(self.p, energy)
        with self.assertRaises(InvalidParameterError):
            rt_by_integration(self.p, 10.0, 'top')
        with self.assertRaises(InvalidParameterError):
            rt_by_integration(self.p, 10.0, extent=0.0)


class TestScatterTypes(unittest.TestCase):
    """Test cases for ScatterPoint and ScatterScan."""

    def test_point_row(self):
        """Rows carry R, T and their sum."""
        row = ScatterPoint(10.0, 0.25, 0.75).as_row()
        self.assertEqual(row['R_plus_T'], 1.0)
        self.assertEqual(row['status'], 'ok')
        self.assertIsNone(row['a'])

    def test_empty_scan(self):
        """An empty scan counts as fully successful."""
        scan = ScatterScan()
        self.assertEqual(scan.attempted, 0)
        self.assertEqual(scan.success_fraction, 1.0)


if __name__ == '__main__':
    unittest.main()
