"""Tail law of solutions in the bottomless barrier V(x) = -|x|^nu.

For nu > 2 the solution oscillates ever faster with a decaying envelope
|x|^(-nu/4); the phase grows like |x|^((nu+2)/2). Both exponents are read
off the extrema of an even Numerov solution.
"""

import math

import numpy as np
from scipy.optimize import curve_fit

from ..entities.params import Parity
from ..entities.states import EnvelopeFit
from ..utils.constants import MIN_EXTREMA
from ..utils.errors import InsufficientExtremaError, InvalidParameterError
from ..utils.helpers import parallel_map
from ..utils.logger import silent_logger
from .numerov import numerov_solve

NU_RANGE = (2.0, 8.0)
HALF_OSCILLATIONS = 40
POWER_POINTS_PER_WAVELENGTH = 100
POWER_BASE_STEP = 1e-2


def default_x_max(nu_exponent: float) -> float:
    """x where the WKB phase 2 x^((nu+2)/2) / (nu+2) reaches 40 pi."""
    half = (nu_exponent + 2.0) / 2.0
    return (half * HALF_OSCILLATIONS * math.pi) ** (1.0 / half)


def find_extrema(xs, ys):
    """(x, psi) at each extremum, refined by the vertex of the parabola through three samples."""
    slopes = np.diff(ys)
    extrema = []
    for i in range(1, slopes.size):
        if slopes[i - 1] * slopes[i] >= 0:
            continue
        a2, a1, a0 = np.polyfit(xs[i - 1:i + 2] - xs[i], ys[i - 1:i + 2], 2)
        if a2 == 0:
            extrema.append((xs[i], ys[i]))
            continue
        vertex = -a1 / (2.0 * a2)
        extrema.append((xs[i] + vertex, a0 + vertex * (a1 + vertex * a2)))
    return extrema


def _phase_law(x, alpha, power, beta):
    return alpha * x ** power + beta


def power_barrier_scan(nu_exponent: float, energy: float, x_max=None,
                       points_per_wavelength=POWER_POINTS_PER_WAVELENGTH, logger=None) -> EnvelopeFit:
    """Fit envelope and phase exponents of the even solution of psi'' + (|x|^nu + E) psi = 0."""
    logger = logger or silent_logger()
    if not NU_RANGE[0] < nu_exponent <= NU_RANGE[1]:
        raise InvalidParameterError(f"nu must lie in ({NU_RANGE[0]:g}, {NU_RANGE[1]:g}], got {nu_exponent!r}")
    x_max = default_x_max(nu_exponent) if x_max is None else float(x_max)
    if not x_max > 0:
        raise InvalidParameterError(f"x_max must be positive, got {x_max!r}")

    def k2(x):
        return abs(x) ** nu_exponent + energy

    xs, ys = numerov_solve(k2, x_max, POWER_BASE_STEP, Parity.EVEN, points_per_wavelength)
    extrema = find_extrema(xs, ys)
    if len(extrema) < MIN_EXTREMA:
        raise InsufficientExtremaError(len(extrema), MIN_EXTREMA)

    positions = np.array([x for x, _ in extrema])
    magnitudes = np.abs([y for _, y in extrema])
    index = np.arange(positions.size, dtype=float)
    outer = positions >= 0.5 * x_max
    if np.count_nonzero(outer) < 4:
        raise InsufficientExtremaError(int(np.count_nonzero(outer)), 4)

    log_x, log_m = np.log(positions[outer]), np.log(magnitudes[outer])
    slope, intercept = np.polyfit(log_x, log_m, 1)
    fit_residual = float(np.sqrt(np.mean((log_m - (slope * log_x + intercept)) ** 2)))

    half = (nu_exponent + 2.0) / 2.0
    guess = (1.0 / (half * math.pi), half, 0.0)
    (alpha_n, power, beta_n), _ = curve_fit(_phase_law, positions[outer], index[outer], p0=guess, maxfev=20000)

    fit = EnvelopeFit(
        nu_exponent=nu_exponent,
        fitted_envelope_power=float(-slope),
        fitted_phase_power=float(power),
        fit_residual=fit_residual,
        alpha=float(math.pi * alpha_n),
        beta=float(-math.pi * beta_n),
        extrema_count=len(extrema),
        energy=float(energy),
        x_max=x_max,
    )
    logger.info(
        f"nu={nu_exponent:g}: envelope power {fit.fitted_envelope_power:.4f} (nu/4 = {nu_exponent / 4:.4f}), "
        f"phase power {fit.fitted_phase_power:.4f}, {fit.extrema_count} extrema"
    )
    return fit


def power_barrier_sweep(nu_values, energy: float, x_max=None, logger=None, n_jobs=None):
    """power_barrier_scan over several exponents; returns (nu, fit or None, error or None)."""
    logger = logger or silent_logger()

    def run(nu):
        try:
            return nu, power_barrier_scan(nu, energy, x_max, logger=logger), None
        except (InsufficientExtremaError, InvalidParameterError) as exc:
            logger.warning(f"nu={nu:g}: {exc}")
            return nu, None, exc

    return parallel_map(run, nu_values, n_jobs)
