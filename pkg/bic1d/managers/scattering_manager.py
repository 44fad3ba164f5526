"""Reflection and transmission through the exponential barrier.

On each half-line the solutions are Hankel waves H(z) with z = qa exp(|x|/a),
so only the values at x = 0 enter the matching. Waves are labelled incident,
reflected or transmitted by the sign of their probability current, and the
currents come from the same (psi, psi') numbers used in the matching.
"""

import math
from dataclasses import replace

import numpy as np

from ..entities.params import ModelParams
from ..entities.states import ScatterPoint, ScatterScan
from ..mechanics.potential import order_of_energy
from ..specfun import HankelKind, cylinder_functions, hankel_complex_order, hankel_complex_order_prime
from ..utils.constants import MATCHING_DET_TOL, SCATTER_NUDGE
from ..utils.errors import IllConditionedError, InvalidParameterError
from ..utils.helpers import capture, parallel_map, scan_threads
from ..utils.logger import silent_logger

INCIDENCES = ('left', 'right')
# Below this imaginary order the real-order path at u = 0 is used.
IMAGINARY_ORDER_FLOOR = 1e-6


def _current(value, slope):
    return (np.conj(value) * slope).imag


def _hankel_pair(p: ModelParams, energy: float):
    """H1(qa) and dH1/dz(qa) at one or two nudged orders."""
    order = order_of_energy(p, energy)
    z = p.qa
    if not order.is_real and order.magnitude >= IMAGINARY_ORDER_FLOOR:
        nu = order.as_complex()
        return [(hankel_complex_order(HankelKind.H1, nu, z).value,
                 hankel_complex_order_prime(HankelKind.H1, nu, z).value)]
    u = order.magnitude if order.is_real else 0.0
    n = round(u)
    if abs(u - n) > SCATTER_NUDGE:
        orders = [u]
    else:
        orders = sorted({abs(n - SCATTER_NUDGE), abs(n + SCATTER_NUDGE)})
    pairs = []
    for nu in orders:
        j, jp, y, yp = cylinder_functions(nu, z)
        pairs.append((complex(j, y), complex(jp, yp)))
    return pairs


def _match(p: ModelParams, h, hp, incidence):
    """Solve the x = 0 matching for one Hankel pair; returns (R, T)."""
    q = p.q
    right = [(h, q * hp), (np.conj(h), q * np.conj(hp))]
    left = [(h, -q * hp), (np.conj(h), -q * np.conj(hp))]
    left_in = max(left, key=lambda w: _current(*w))
    left_out = min(left, key=lambda w: _current(*w))
    right_out = max(right, key=lambda w: _current(*w))
    right_in = min(right, key=lambda w: _current(*w))
    if incidence == 'left':
        inc, refl, trans = left_in, left_out, right_out
    else:
        inc, refl, trans = right_in, right_out, left_out

    matrix = np.array([[refl[0], -trans[0]], [refl[1], -trans[1]]], dtype=complex)
    rhs = -np.array([inc[0], inc[1]], dtype=complex)
    scale = np.linalg.norm(matrix[:, 0]) * np.linalg.norm(matrix[:, 1])
    det = np.linalg.det(matrix)
    if scale == 0.0 or abs(det) < MATCHING_DET_TOL * scale:
        raise IllConditionedError(
            f"matching at x=0 is singular (|det|={abs(det):.2e})", determinant=det
        )
    r, t = np.linalg.solve(matrix, rhs)
    j_inc = abs(_current(*inc))
    r_prob = abs(r) ** 2 * abs(_current(*refl)) / j_inc
    t_prob = abs(t) ** 2 * abs(_current(*trans)) / j_inc
    return float(r_prob), float(t_prob)


class ScatteringManager:
    """R(E), T(E) for one parameter set."""

    def __init__(self, params: ModelParams, logger=None, n_jobs=None):
        self.params = params
        self.logger = logger or silent_logger()
        self.n_jobs = n_jobs if n_jobs is not None else scan_threads(self.logger)

    def rt_coefficients(self, energy: float, incidence='left') -> ScatterPoint:
        """Reflection and transmission probabilities at one energy."""
        if not (math.isfinite(energy) and energy > 0.0):
            raise InvalidParameterError(f"energy must be positive, got {energy!r}")
        if incidence not in INCIDENCES:
            raise InvalidParameterError(f"incidence must be one of {INCIDENCES}, got {incidence!r}")
        results = [_match(self.params, h, hp, incidence) for h, hp in _hankel_pair(self.params, energy)]
        r_prob = sum(r for r, _ in results) / len(results)
        t_prob = sum(t for _, t in results) / len(results)
        return ScatterPoint(float(energy), r_prob, t_prob, incidence=incidence)

    def _collect(self, jobs, make_failure):
        outcomes = parallel_map(lambda job: capture(job[1], job[0]), jobs, self.n_jobs)
        scan = ScatterScan()
        for (key, _), (point, error) in zip(jobs, outcomes):
            if error is None:
                scan.points.append(point)
            else:
                self.logger.warning(f"scattering point {key!r} failed: {error}")
                scan.failures.append(make_failure(key, type(error).__name__))
        return scan

    def rt_scan(self, e_min: float, e_max: float, steps: int, incidence='left') -> ScatterScan:
        """Uniform energy scan; failing points are flagged, not fatal."""
        if not 0.0 < e_min < e_max:
            raise InvalidParameterError(f"need 0 < e_min < e_max, got [{e_min!r}, {e_max!r}]")
        if steps < 2:
            raise InvalidParameterError(f"steps must be at least 2, got {steps!r}")
        energies = np.linspace(e_min, e_max, int(steps))
        jobs = [(float(e), lambda e: self.rt_coefficients(e, incidence)) for e in energies]
        scan = self._collect(
            jobs, lambda e, status: ScatterPoint(e, math.nan, math.nan, incidence=incidence, status=status)
        )
        self.logger.info(
            f"R/T scan over [{e_min:g}, {e_max:g}]: {len(scan.points)}/{scan.attempted} points ok"
        )
        return scan

    def rt_a_sweep(self, energy: float, a_values, incidence='left') -> ScatterScan:
        """Fixed energy, varying length scale a."""
        def solve(a):
            point = ScatteringManager(self.params.with_a(a), self.logger, 1).rt_coefficients(energy, incidence)
            return replace(point, a=a)

        jobs = [(float(a), solve) for a in a_values]
        scan = self._collect(
            jobs,
            lambda a, status: ScatterPoint(float(energy), math.nan, math.nan, a=a,
                                           incidence=incidence, status=status),
        )
        self.logger.info(f"R/T a-sweep at E={energy:g}: {len(scan.points)}/{scan.attempted} points ok")
        return scan


def rt_coefficients(p: ModelParams, energy: float, incidence='left') -> ScatterPoint:
    return ScatteringManager(p).rt_coefficients(energy, incidence)


def rt_scan(p: ModelParams, e_min: float, e_max: float, steps: int, logger=None) -> ScatterScan:
    return ScatteringManager(p, logger).rt_scan(e_min, e_max, steps)
