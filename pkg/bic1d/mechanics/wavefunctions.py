"""Closed-form solutions of the Schroedinger equation for the exponential barrier.

With z = qa exp(|x|/a) the equation becomes Bessel's equation of order
kappa*a, so every state here is a combination of J_{+kappa a}(z) and
J_{-kappa a}(z). Derivatives are d/dx; at x = 0 the |x| dependence gives
the symmetric (average) derivative.
"""

import math

import numpy as np

from ..entities.params import ModelParams, Parity
from ..entities.wavefunction import Source, WavefunctionTable
from ..managers.spectrum_manager import condition
from ..specfun import bessel_j, bessel_j_prime
from ..utils.constants import EIGENVALUE_RESIDUAL_TOL, INTEGER_KAPPA_GUARD
from ..utils.errors import IntegerOrderError, InvalidParameterError, NotAnEigenvalueError
from .potential import local_k2, order_of_energy

STATE_KINDS = ('bic', 'continuum', 'psi+', 'psi-')


def _sign(x):
    return 1.0 if x > 0 else (-1.0 if x < 0 else 0.0)


def _parse_sign(sign):
    if sign in ('+', 1, 1.0):
        return 1.0
    if sign in ('-', -1, -1.0):
        return -1.0
    raise InvalidParameterError(f"sign must be '+' or '-', got {sign!r}")


def _real_order(p: ModelParams, energy: float) -> float:
    if energy >= p.v0:
        raise InvalidParameterError(f"closed-form states need E < V0, got E={energy!r}")
    return order_of_energy(p, energy).magnitude


def _z(p, x):
    return p.qa * math.exp(abs(x) / p.a)


def psi_pm(p: ModelParams, energy: float, sign, x: float, derivative=False) -> float:
    """psi_+- (x) = J_{+-kappa a}(qa exp(|x|/a))."""
    nu = _parse_sign(sign) * _real_order(p, energy)
    z = _z(p, x)
    if derivative:
        return bessel_j_prime(nu, z).value * _sign(x) * z / p.a
    return bessel_j(nu, z).value


def continuum_state_at_order(p: ModelParams, u: float, parity: Parity, x: float, derivative=False) -> float:
    """Definite-parity combination of J_{+u} and J_{-u} at an explicit order u.

    At integer u the combination vanishes identically; callers that need a
    usable state there nudge the order away from the integer first.
    """
    z0 = p.qa
    z = _z(p, x)
    if parity is Parity.EVEN:
        c_plus = bessel_j_prime(-u, z0).value
        c_minus = bessel_j_prime(u, z0).value
        factor = 1.0
    else:
        c_plus = bessel_j(-u, z0).value
        c_minus = bessel_j(u, z0).value
        factor = _sign(x)
    if derivative:
        slope = z / p.a * (c_plus * bessel_j_prime(u, z).value - c_minus * bessel_j_prime(-u, z).value)
        return slope * (_sign(x) if parity is Parity.EVEN else 1.0)
    return factor * (c_plus * bessel_j(u, z).value - c_minus * bessel_j(-u, z).value)


def continuum_state(p: ModelParams, energy: float, parity: Parity, x: float, derivative=False) -> float:
    """Degenerate continuum state of the given parity (C = 1, not normalizable)."""
    u = _real_order(p, energy)
    if abs(u - round(u)) <= INTEGER_KAPPA_GUARD:
        raise IntegerOrderError(
            f"kappa*a = {u!r} is an integer: the definite-parity pair vanishes identically; "
            f"use the scattering states at E={energy!r}"
        )
    return continuum_state_at_order(p, u, parity, x, derivative)


def check_eigenvalue(p: ModelParams, energy: float, parity: Parity) -> float:
    """Return kappa*a if E satisfies the quantization condition, else raise."""
    parity = Parity.parse(parity)
    u = _real_order(p, energy) if energy < p.v0 else 0.0
    if not 0.0 < u < p.qa:
        raise NotAnEigenvalueError(energy, parity, math.inf)
    residual = abs(condition(p, parity, u))
    if residual > EIGENVALUE_RESIDUAL_TOL:
        raise NotAnEigenvalueError(energy, parity, residual)
    return u


def _bic_profile(p, u, parity, x, amplitude, derivative):
    z = _z(p, x)
    if derivative:
        slope = bessel_j_prime(u, z).value * z / p.a
        return amplitude * slope * (_sign(x) if parity is Parity.EVEN else 1.0)
    value = bessel_j(u, z).value
    return amplitude * value * (_sign(x) if parity is Parity.ODD else 1.0)


def bic_wavefunction(p: ModelParams, energy: float, parity: Parity, x: float,
                     amplitude=1.0, derivative=False) -> float:
    """Square-integrable BIC: D J_{kappa a}(z) (even) or D sign(x) J_{kappa a}(z) (odd)."""
    parity = Parity.parse(parity)
    u = check_eigenvalue(p, energy, parity)
    return _bic_profile(p, u, parity, x, amplitude, derivative)


def closed_form_table(p: ModelParams, energy: float, xs, kind='bic', parity=None,
                      amplitude=1.0) -> WavefunctionTable:
    """Sample one of the closed-form states on ``xs``."""
    xs = np.asarray(xs, dtype=float)
    if kind == 'bic':
        parity = Parity.parse(parity)
        u = check_eigenvalue(p, energy, parity)
        values = [_bic_profile(p, u, parity, x, amplitude, False) for x in xs]
    elif kind == 'continuum':
        parity = Parity.parse(parity)
        values = [amplitude * continuum_state(p, energy, parity, x) for x in xs]
    elif kind in ('psi+', 'psi-'):
        sign = kind[-1]
        parity = Parity.EVEN
        values = [amplitude * psi_pm(p, energy, sign, x) for x in xs]
    else:
        raise InvalidParameterError(f"kind must be one of {STATE_KINDS}, got {kind!r}")
    return WavefunctionTable(xs, np.array(values), energy, parity, Source.CLOSED_FORM)


def symmetric_grid(x_max: float, samples: int) -> np.ndarray:
    """Uniform grid on [-x_max, x_max]; x = 0 is added when three or more samples are asked for."""
    if samples < 2 or x_max <= 0:
        raise InvalidParameterError("need samples >= 2 and x_max > 0")
    xs = np.linspace(-x_max, x_max, samples)
    if samples >= 3 and not np.any(xs == 0.0):
        xs = np.sort(np.append(xs, 0.0))
    return xs


def phase_grid(p: ModelParams, energy: float, x_max: float, points_per_wavelength=40,
               base_step=1e-2) -> np.ndarray:
    """Symmetric grid through x = 0 resolving the local wavelength."""
    k2 = local_k2(p, energy)
    right = [0.0]
    x = 0.0
    while x < x_max:
        value = k2(x)
        step = base_step
        if value > 0:
            step = min(base_step, 2.0 * math.pi / math.sqrt(value) / points_per_wavelength)
        x = min(x + step, x_max)
        right.append(x)
    right = np.array(right)
    return np.concatenate((-right[:0:-1], right))
