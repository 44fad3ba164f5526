"""Tests for the quantization conditions, the spectrum search and the norms."""

import math
import unittest

import numpy as np
import pytest
from scipy import integrate, special

from bic1d.entities.params import Parity, make_params
from bic1d.entities.states import BicState, NormParams
from bic1d.managers.spectrum_manager import (
    SpectrumManager,
    closed_form_integral,
    condition,
    find_bic_spectrum,
    norm_sq_closed_form,
    normalize,
    quadrature_norm_report,
)
from bic1d.mechanics.wavefunctions import closed_form_table, phase_grid
from bic1d.oracle.projection import bic_scan_by_projection, orders_energy_grid
from bic1d.oracle.quadrature import quadrature_norm
from bic1d.utils.errors import InvalidParameterError
from bic1d.utils.logger import silent_logger

REFERENCE_ENERGIES = [18.6108, 37.2630, 44.8253, 48.9214, 49.9988]
REFERENCE_PARITIES = [Parity.EVEN, Parity.ODD, Parity.EVEN, Parity.ODD, Parity.EVEN]


def adaptive_norm_integral(r, s, span=4000.0, chunk=50.0):
    """int_s^inf J_r(t)^2 / t dt by adaptive quadrature on chunks plus the 1/(pi T) tail."""
    total = 0.0
    edges = np.arange(s, s + span + chunk, chunk)
    for lo, hi in zip(edges[:-1], edges[1:]):
        value, _ = integrate.quad(lambda t: special.jv(r, t) ** 2 / t, lo, hi,
                                  limit=200, epsabs=1e-15, epsrel=1e-12)
        total += value
    end = edges[-1]
    return total + (1.0 / end + math.cos(2.0 * end - r * math.pi) / (2.0 * end * end)) / math.pi


class TestCondition(unittest.TestCase):
    """Test cases for the quantization conditions."""

    def setUp(self):
        self.p = make_params(50, 1, 1)

    def test_first_even_zero(self):
        """J'_u(qa) nearly vanishes at the first even BIC."""
        self.assertLess(abs(condition(self.p, Parity.EVEN, 5.60261)), 1e-3)

    def test_first_odd_zero(self):
        """J_u(qa) nearly vanishes at the first odd BIC."""
        self.assertLess(abs(condition(self.p, Parity.ODD, 3.56894)), 1e-3)

    def test_order_outside_range(self):
        """u must lie strictly inside (0, qa)."""
        for u in (0.0, -1.0, self.p.qa, 8.0):
            with self.assertRaises(InvalidParameterError):
                condition(self.p, Parity.EVEN, u)

    def test_condition_curve(self):
        """Curve rows skip energies outside the continuum window."""
        rows = SpectrumManager(self.p, n_jobs=1).condition_curve([-10.0, 10.0, 30.0, 60.0])
        self.assertEqual([row['energy'] for row in rows], [10.0, 30.0])
        for row in rows:
            self.assertEqual(set(row), {'energy', 'kappa_a', 'even_condition', 'odd_condition'})


class TestFindSpectrum(unittest.TestCase):
    """Test cases for find_bic_spectrum."""

    @classmethod
    def setUpClass(cls):
        cls.p = make_params(50, 1, 1)
        cls.states = find_bic_spectrum(cls.p)

    def test_reference_energies(self):
        """Five states close to the reference energies."""
        self.assertEqual(len(self.states), 5)
        for state, expected in zip(self.states, REFERENCE_ENERGIES):
            self.assertAlmostEqual(state.energy, expected, delta=5e-3)

    def test_parities_alternate(self):
        """Parities run E, O, E, O, E."""
        self.assertEqual([s.parity for s in self.states], REFERENCE_PARITIES)

    def test_state_fields(self):
        """Indices count from 1 and each state sits on its condition."""
        self.assertEqual([s.index for s in self.states], [1, 2, 3, 4, 5])
        for state in self.states:
            self.assertTrue(0.0 < state.energy < self.p.v0)
            self.assertAlmostEqual(state.kappa_a, math.sqrt(self.p.v0 - state.energy), places=9)
            self.assertLessEqual(state.residual, 1e-8)
            self.assertLessEqual(abs(condition(self.p, state.parity, state.kappa_a)), 1e-8)
            self.assertIsNone(state.norm_sq)

    def test_energies_sorted(self):
        """States are energy-ordered."""
        energies = [s.energy for s in self.states]
        self.assertEqual(energies, sorted(energies))

    def test_threads_do_not_change_result(self):
        """Serial and threaded scans agree."""
        serial = SpectrumManager(self.p, n_jobs=1).find_bic_spectrum()
        threaded = SpectrumManager(self.p, n_jobs=4).find_bic_spectrum()
        self.assertEqual([s.energy for s in serial], [s.energy for s in threaded])

    def test_no_states_for_small_qa(self):
        """qa = 0.1 admits no state."""
        self.assertEqual(find_bic_spectrum(make_params(0.1, 0.1, 1)), [])

    def test_resolution_range(self):
        """Scan resolution must lie in (1e-6, 1e-1)."""
        with self.assertRaises(InvalidParameterError):
            find_bic_spectrum(self.p, scan_resolution=0.5)

    def test_logging(self):
        """The manager reports the number of states it found."""
        lines = []
        logger = silent_logger()
        logger.log = lambda message, level='INFO': lines.append((level, message))
        SpectrumManager(self.p, logger, n_jobs=1).find_bic_spectrum()
        self.assertTrue(any('5 BIC state(s)' in message for _, message in lines))

    def test_roots_interlace(self):
        """Exactly one odd root lies between consecutive even roots in kappa a."""
        for a in (0.5, 1.0, 2.0, 3.0):
            states = find_bic_spectrum(make_params(50, a, 1))
            evens = sorted(s.kappa_a for s in states if s.parity is Parity.EVEN)
            odds = sorted(s.kappa_a for s in states if s.parity is Parity.ODD)
            self.assertGreaterEqual(len(evens), 1, msg=f"a={a}")
            for lo, hi in zip(evens, evens[1:]):
                self.assertEqual(sum(lo < u < hi for u in odds), 1, msg=f"a={a}, ({lo}, {hi})")
            by_order = [s.parity for s in sorted(states, key=lambda s: s.kappa_a)]
            for first, second in zip(by_order, by_order[1:]):
                self.assertIsNot(first, second, msg=f"a={a}")

    @pytest.mark.slow
    def test_wide_barrier_count_matches_projection(self):
        """At a = 5 the closed-form count equals the integrate-and-project count."""
        p = make_params(50, 5, 1)
        states = find_bic_spectrum(p)
        candidates = bic_scan_by_projection(p, orders_energy_grid(p), n_jobs=4)
        self.assertAlmostEqual(p.qa, 35.355, places=3)
        self.assertEqual(len(states), 23)
        self.assertEqual(len(candidates), len(states))
        self.assertEqual([c.parity for c in candidates], [s.parity for s in states])

    @pytest.mark.slow
    def test_count_monotone_in_qa(self):
        """State count never drops as a grows at fixed V0."""
        manager = SpectrumManager(self.p, n_jobs=2)
        rows = manager.count_sweep([0.2, 0.5, 1.0, 2.0, 3.0, 5.0], scan_resolution=1e-2)
        counts = [count for _, _, count in rows]
        self.assertEqual(counts, sorted(counts))
        self.assertEqual(rows[2][2], 5)
        self.assertAlmostEqual(rows[-1][1], 35.355, places=3)


class TestNorms(unittest.TestCase):
    """Test cases for the closed-form norm."""

    @classmethod
    def setUpClass(cls):
        cls.p = make_params(50, 1, 1)
        cls.states = find_bic_spectrum(cls.p)

    def test_matches_adaptive_quadrature(self):
        """Closed form agrees with adaptive quadrature for every default state."""
        for state in self.states:
            norm = NormParams(state.kappa_a, self.p.qa)
            expected = adaptive_norm_integral(norm.r, norm.s)
            self.assertAlmostEqual(closed_form_integral(norm) / expected, 1.0, delta=1e-6,
                                   msg=f"state {state.index}")

    def test_first_state_norm_value(self):
        """Full-line norm of the first even state is 2a times the half-line integral."""
        norm = NormParams(5.60261, 7.07107)
        self.assertAlmostEqual(norm_sq_closed_form(norm, 1.0), 2.0 * closed_form_integral(norm))
        self.assertGreater(norm_sq_closed_form(norm, 1.0), 0.0)

    def test_half_integer_order(self):
        """r = 1/2 reduces to (2/pi) int_1^inf sin^2 t / t^2 dt per half-line."""
        oscillating, _ = integrate.quad(lambda t: 1.0 / t ** 2, 1.0, np.inf, weight='cos', wvar=2.0)
        half_line = (2.0 / math.pi) * (0.5 - 0.5 * oscillating)
        self.assertAlmostEqual(norm_sq_closed_form(NormParams(0.5, 1.0), 1.0), 2.0 * half_line, delta=1e-10)

    def test_nonpositive_order(self):
        """The closed form needs r > 0."""
        for r in (0.0, -0.5):
            with self.assertRaises(InvalidParameterError):
                norm_sq_closed_form(NormParams(r, 1.0), 1.0)
        with self.assertRaises(InvalidParameterError):
            NormParams(1.0, 0.0)
        with self.assertRaises(InvalidParameterError):
            norm_sq_closed_form(NormParams(1.0, 1.0), 0.0)

    def test_linear_in_a(self):
        """Doubling a at fixed (r, s) doubles the norm."""
        norm = NormParams(self.states[0].kappa_a, self.p.qa)
        self.assertAlmostEqual(norm_sq_closed_form(norm, 2.0) / norm_sq_closed_form(norm, 1.0), 2.0, places=14)

    def test_normalize_idempotent(self):
        """Normalizing twice leaves norm_sq unchanged."""
        once = normalize(self.p, self.states[0])
        twice = normalize(self.p, once)
        self.assertEqual(once.norm_sq, twice.norm_sq)
        self.assertAlmostEqual(once.amplitude, 1.0 / math.sqrt(once.norm_sq))
        self.assertEqual(BicState(1, Parity.EVEN, 1.0, 1.0, 0.0).amplitude, 1.0)

    def test_quadrature_report(self):
        """Direct quadrature report carries the closed form when r > 0."""
        report = quadrature_norm_report(self.states[1].kappa_a, self.p.qa)
        self.assertAlmostEqual(report.quadrature / report.closed_form, 1.0, delta=1e-6)
        self.assertIsNone(quadrature_norm_report(-0.5, 1.0).closed_form)
        self.assertGreater(quadrature_norm_report(-0.5, 1.0).quadrature, 0.0)

    @pytest.mark.slow
    def test_normalized_state_has_unit_norm(self):
        """Quadrature of the normalized state's density gives 1."""
        for state in self.states[:2]:
            normalized = normalize(self.p, state)
            xs = phase_grid(self.p, state.energy, 6.0)
            table = closed_form_table(self.p, state.energy, xs, 'bic', state.parity, normalized.amplitude)
            self.assertAlmostEqual(quadrature_norm(self.p, table), 1.0, delta=1e-4)


if __name__ == '__main__':
    unittest.main()
