"""Numerov integration of psi'' + k^2(x) psi = 0 from x = 0 outward.

The step starts at ``base_step`` and is halved whenever the local wavelength
2 pi / k drops below ``points_per_wavelength`` steps; the extra starting
value needed after a halving is interpolated from the last six samples.
"""

import math

import numpy as np
from scipy.interpolate import BarycentricInterpolator
from scipy.ndimage import maximum_filter1d

from ..entities.params import ModelParams, Parity
from ..entities.wavefunction import Source, WavefunctionTable
from ..mechanics.potential import local_k2
from ..utils.constants import DEFAULT_POINTS_PER_WAVELENGTH, NUMEROV_POINT_BUDGET
from ..utils.errors import InvalidParameterError, StepUnderflowError

RK4_SUBSTEPS = 8
INTERPOLATION_POINTS = 6
MAX_TABLE_EXTENT = 8.0  # in units of a


def _rk4_start(k2, h):
    """psi(h) for psi(0) = 0, psi'(0) = 1, by RK4 substeps."""
    dx = h / RK4_SUBSTEPS
    x, y, dy = 0.0, 0.0, 1.0
    for _ in range(RK4_SUBSTEPS):
        k1y, k1d = dy, -k2(x) * y
        k2y, k2d = dy + 0.5 * dx * k1d, -k2(x + 0.5 * dx) * (y + 0.5 * dx * k1y)
        k3y, k3d = dy + 0.5 * dx * k2d, -k2(x + 0.5 * dx) * (y + 0.5 * dx * k2y)
        k4y, k4d = dy + dx * k3d, -k2(x + dx) * (y + dx * k3y)
        y += dx * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
        dy += dx * (k1d + 2.0 * k2d + 2.0 * k3d + k4d) / 6.0
        x += dx
    return y


def numerov_solve(k2, x_max, base_step, parity=Parity.EVEN, points_per_wavelength=DEFAULT_POINTS_PER_WAVELENGTH):
    """Half-line solution on [0, x_max] as (xs, ys).

    Even start: psi(0) = 1, psi'(0) = 0. Odd start: psi(0) = 0, psi'(0) = 1.
    ``points_per_wavelength=None`` keeps the step fixed at ``base_step``.
    """
    parity = Parity.parse(parity)
    if not base_step > 0.0:
        raise InvalidParameterError(f"base_step must be positive, got {base_step!r}")
    if not x_max > 0.0:
        raise InvalidParameterError(f"x_max must be positive, got {x_max!r}")

    def too_coarse(x, h):
        if points_per_wavelength is None:
            return False
        value = k2(x)
        return value > 0.0 and h * math.sqrt(value) * points_per_wavelength > 2.0 * math.pi

    h = base_step
    while too_coarse(h, h):
        h *= 0.5
    if parity is Parity.EVEN:
        y0 = 1.0
        y1 = (1.0 - 5.0 * h * h * k2(0.0) / 12.0) * y0 / (1.0 + h * h * k2(h) / 12.0)
    else:
        y0, y1 = 0.0, _rk4_start(k2, h)

    xs, ys = [0.0, h], [y0, y1]
    prev, cur = y0, y1
    block_start, block_steps = 0.0, 1
    x = h
    end = x_max * (1.0 - 1e-12)
    while x < end:
        while too_coarse(x + h, h):
            h *= 0.5
            window = slice(-INTERPOLATION_POINTS, None)
            prev = float(BarycentricInterpolator(xs[window], ys[window])(x - h))
            block_start, block_steps = x, 0
        c = h * h / 12.0
        nxt = (2.0 * (1.0 - 5.0 * c * k2(x)) * cur - (1.0 + c * k2(x - h)) * prev) / (1.0 + c * k2(x + h))
        block_steps += 1
        x = block_start + block_steps * h
        prev, cur = cur, nxt
        xs.append(x)
        ys.append(nxt)
        if len(xs) > NUMEROV_POINT_BUDGET:
            raise StepUnderflowError(
                f"step refinement needs more than {NUMEROV_POINT_BUDGET} points before x={x_max!r} "
                f"(reached x={x:.6g}, step {h:.3e})"
            )
    return np.array(xs), np.array(ys)


def mirror(xs, ys, parity):
    """Extend a half-line solution to negative x by parity."""
    sign = 1.0 if Parity.parse(parity) is Parity.EVEN else -1.0
    return np.concatenate((-xs[:0:-1], xs)), np.concatenate((sign * ys[:0:-1], ys))


def integrate_parity_ode(p: ModelParams, energy: float, parity: Parity, x_max: float, base_step: float,
                         points_per_wavelength=DEFAULT_POINTS_PER_WAVELENGTH) -> WavefunctionTable:
    """Numerov solution of the model equation on [-x_max, x_max] with definite parity."""
    parity = Parity.parse(parity)
    if not 0.0 < x_max <= MAX_TABLE_EXTENT * p.a:
        raise InvalidParameterError(f"x_max must lie in (0, {MAX_TABLE_EXTENT:g}a], got {x_max!r}")
    if points_per_wavelength < DEFAULT_POINTS_PER_WAVELENGTH:
        raise InvalidParameterError(
            f"points_per_wavelength must be at least {DEFAULT_POINTS_PER_WAVELENGTH}, got {points_per_wavelength!r}"
        )
    xs, ys = numerov_solve(local_k2(p, energy), x_max, base_step, parity, points_per_wavelength)
    xs, ys = mirror(xs, ys, parity)
    return WavefunctionTable(xs, ys, energy, parity, Source.ODE_INTEGRATION)


def anchor_scale(table: WavefunctionTable, reference, x_anchor: float) -> WavefunctionTable:
    """Rescale ``table`` so it equals ``reference(x)`` at the sample nearest ``x_anchor``."""
    i = table.nearest_index(x_anchor)
    if table.values[i] == 0:
        raise InvalidParameterError(f"table vanishes at the anchor x={table.xs[i]!r}")
    return table.scaled(reference(table.xs[i]) / table.values[i])


def numerov_weighted_residual(table: WavefunctionTable, k2, window=101) -> float:
    """Largest Numerov three-point residual over equally spaced sample triples.

    Each residual (1 + h^2 k+^2/12) psi+ - 2 (1 - 5 h^2 k0^2/12) psi0 + (1 + h^2 k-^2/12) psi-
    is divided by max|psi| over ``window`` neighbouring samples.
    """
    xs, ys = table.xs, table.values
    if xs.size < 3:
        return 0.0
    left = xs[1:-1] - xs[:-2]
    right = xs[2:] - xs[1:-1]
    equal = np.isclose(left, right, rtol=1e-9, atol=0.0)
    k2_values = np.array([k2(x) for x in xs])
    c = left * left / 12.0
    residual = (
        (1.0 + c * k2_values[2:]) * ys[2:]
        - 2.0 * (1.0 - 5.0 * c * k2_values[1:-1]) * ys[1:-1]
        + (1.0 + c * k2_values[:-2]) * ys[:-2]
    )
    local = maximum_filter1d(np.abs(ys), size=window, mode='nearest')[1:-1]
    ratio = np.divide(np.abs(residual), local, out=np.zeros_like(local, dtype=float), where=local > 0)
    return float(np.max(ratio[equal])) if np.any(equal) else 0.0


def self_convergence_ratio(k2, x_max, base_step, parity=Parity.EVEN) -> float:
    """max|psi_h - psi_h/2| / max|psi_h/2 - psi_h/4| on a fixed step; about 16 for Numerov."""
    _, coarse = numerov_solve(k2, x_max, base_step, parity, None)
    _, medium = numerov_solve(k2, x_max, 0.5 * base_step, parity, None)
    _, fine = numerov_solve(k2, x_max, 0.25 * base_step, parity, None)
    n = min(coarse.size, (medium.size + 1) // 2, (fine.size + 3) // 4)
    first = np.max(np.abs(coarse[:n] - medium[::2][:n]))
    second = np.max(np.abs(medium[::2][:n] - fine[::4][:n]))
    return float(first / second)
