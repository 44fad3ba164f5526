"""Reflection and transmission by direct integration of a travelling wave.

A pure transmitted wave H1(z) is set up far out on the exit side and the
complex Schroedinger equation is integrated through the barrier to the
entry side, where the result is split into incident H2 and reflected H1
waves. Nothing is matched at x = 0, and integer orders need no nudging
because the boundary waves are evaluated at large z.
"""

import math

import numpy as np
from scipy.integrate import solve_ivp

from ..entities.params import ModelParams
from ..entities.states import ScatterPoint
from ..managers.scattering_manager import IMAGINARY_ORDER_FLOOR
from ..mechanics.potential import local_k2, order_of_energy
from ..specfun import HankelKind, cylinder_functions, hankel_complex_order, hankel_complex_order_prime
from ..utils.errors import ConvergenceError, IllConditionedError, InvalidParameterError
from ..utils.logger import silent_logger

TRAVELLING_WAVE_EXTENT = 3.0  # in units of a
TRAVELLING_WAVE_RTOL = 1e-11
TRAVELLING_WAVE_ATOL = 1e-14


def _boundary_waves(p: ModelParams, energy: float, z: float):
    """(H1, dH1/dz, H2, dH2/dz) at argument z for the order of ``energy``."""
    order = order_of_energy(p, energy)
    if not order.is_real and order.magnitude >= IMAGINARY_ORDER_FLOOR:
        nu = order.as_complex()
        return (hankel_complex_order(HankelKind.H1, nu, z).value,
                hankel_complex_order_prime(HankelKind.H1, nu, z).value,
                hankel_complex_order(HankelKind.H2, nu, z).value,
                hankel_complex_order_prime(HankelKind.H2, nu, z).value)
    u = order.magnitude if order.is_real else 0.0
    j, jp, y, yp = cylinder_functions(u, z)
    return complex(j, y), complex(jp, yp), complex(j, -y), complex(jp, -yp)


def _current(value, slope):
    return (np.conj(value) * slope).imag


def _integrate_leg(rhs, x_start, x_end, state, rtol, atol):
    solution = solve_ivp(rhs, (x_start, x_end), state, method='DOP853', rtol=rtol, atol=atol)
    if not solution.success:
        raise ConvergenceError(
            f"travelling-wave integration from x={x_start:g} to x={x_end:g} failed: {solution.message}"
        )
    return solution.y[:, -1]


def rt_by_integration(p: ModelParams, energy: float, incidence='left', extent=TRAVELLING_WAVE_EXTENT,
                      rtol=TRAVELLING_WAVE_RTOL, atol=TRAVELLING_WAVE_ATOL, logger=None) -> ScatterPoint:
    """R and T from a complex ODE solve between x = -+extent*a.

    The integration is split at x = 0, where V(x) has a kink.
    """
    logger = logger or silent_logger()
    if not (math.isfinite(energy) and energy > 0.0):
        raise InvalidParameterError(f"energy must be positive, got {energy!r}")
    if incidence not in ('left', 'right'):
        raise InvalidParameterError(f"incidence must be 'left' or 'right', got {incidence!r}")
    if extent <= 0.0:
        raise InvalidParameterError(f"extent must be positive, got {extent!r}")

    exit_side = 1.0 if incidence == 'left' else -1.0
    length = extent * p.a
    z = p.qa * math.exp(extent)
    h1, h1p, h2, h2p = _boundary_waves(p, energy, z)
    # d/dx = sign(x) (z / a) d/dz
    dz = z / p.a
    out_exit = (h1, exit_side * dz * h1p)
    out_entry = (h1, -exit_side * dz * h1p)
    in_entry = (h2, -exit_side * dz * h2p)

    k2 = local_k2(p, energy)

    def rhs(x, y):
        return [y[1], -k2(x) * y[0]]

    state = np.array(out_exit, dtype=complex)
    state = _integrate_leg(rhs, exit_side * length, 0.0, state, rtol, atol)
    state = _integrate_leg(rhs, 0.0, -exit_side * length, state, rtol, atol)

    matrix = np.array([[in_entry[0], out_entry[0]], [in_entry[1], out_entry[1]]], dtype=complex)
    if abs(np.linalg.det(matrix)) == 0.0:
        raise IllConditionedError("entry-side Hankel waves are linearly dependent")
    incident, reflected = np.linalg.solve(matrix, state)

    j_in = abs(_current(*in_entry)) * abs(incident) ** 2
    r_prob = abs(_current(*out_entry)) * abs(reflected) ** 2 / j_in
    t_prob = abs(_current(*out_exit)) / j_in
    logger.debug(f"travelling wave at E={energy:.8g} ({incidence}): R={r_prob:.12g} T={t_prob:.12g}")
    return ScatterPoint(float(energy), float(r_prob), float(t_prob), incidence=incidence)
