"""Probability current j = Im(conj(psi) psi') of tabulated complex states.

Units follow h2m = 1: the physical current is j times hbar/m.
"""

import numpy as np

from ..entities.params import ModelParams
from ..entities.wavefunction import Source, WavefunctionTable
from ..mechanics.potential import argument_of_position, order_of_energy
from ..specfun import cylinder_functions
from ..utils.errors import InvalidParameterError


def probability_current(table: WavefunctionTable) -> np.ndarray:
    """j(x) on the table grid, with psi' from second-order differences."""
    if not table.is_uniform():
        raise InvalidParameterError("probability_current needs a uniform grid")
    if not table.is_complex or table.xs.size < 3:
        return np.zeros(table.xs.size)
    slope = np.gradient(table.values, table.xs, edge_order=2)
    return np.imag(np.conj(table.values) * slope)


def qes_state_table(x_min=-5.0, x_max=5.0, step=1e-4) -> WavefunctionTable:
    """exp(i sinh(x) / 2) / sqrt(cosh x), which carries current 1/2 everywhere.

    It solves psi'' + [sinh^2(x)/4 + 3 sech^2(x)/4] psi = 0, a zero-energy state.
    """
    xs = np.linspace(x_min, x_max, int(round((x_max - x_min) / step)) + 1)
    values = np.exp(0.5j * np.sinh(xs)) / np.sqrt(np.cosh(xs))
    return WavefunctionTable(xs, values, 0.0, None, Source.CLOSED_FORM)


def hankel_wave_table(p: ModelParams, energy: float, x_min=1.0, x_max=3.0, step=1e-4) -> WavefunctionTable:
    """H1_{kappa a}(qa exp(x/a)) on x_min <= x <= x_max (x_min > 0)."""
    order = order_of_energy(p, energy)
    if not order.is_real:
        raise InvalidParameterError(f"hankel_wave_table needs E <= V0, got E={energy!r}")
    if not 0.0 < x_min < x_max:
        raise InvalidParameterError(f"need 0 < x_min < x_max, got [{x_min!r}, {x_max!r}]")
    xs = np.linspace(x_min, x_max, int(round((x_max - x_min) / step)) + 1)
    values = []
    for z in argument_of_position(p, xs):
        j, _, y, _ = cylinder_functions(order.magnitude, float(z))
        values.append(complex(j, y))
    return WavefunctionTable(xs, np.array(values), energy, None, Source.CLOSED_FORM)
