"""Full-line norm of a tabulated state with an analytic tail beyond the table."""

import math
import warnings

import numpy as np
from scipy.integrate import simpson

from ..entities.params import ModelParams
from ..entities.wavefunction import WavefunctionTable
from ..mechanics.potential import argument_of_position
from ..utils.constants import TAIL_WARN_FRACTION
from ..utils.errors import InvalidParameterError
from ..utils.logger import silent_logger

MIN_TABLE_EXTENT = 5.0  # in units of a
TAIL_FIT_WIDTH = 1.0    # in units of a


def _richardson_simpson(xs, ys):
    """Simpson on all samples, extrapolated against Simpson on every other sample."""
    if xs.size < 5:
        return float(simpson(ys, x=xs))
    m = xs.size - 1 if (xs.size - 1) % 2 == 0 else xs.size - 2
    fine = simpson(ys[:m + 1], x=xs[:m + 1])
    coarse = simpson(ys[:m + 1:2], x=xs[:m + 1:2])
    rest = simpson(ys[m:], x=xs[m:]) if m < xs.size - 1 else 0.0
    return float(fine + (fine - coarse) / 15.0 + rest)


def _tail(p: ModelParams, xs, density):
    """Integral of psi^2 beyond xs[-1] from a fit psi^2 = (alpha + beta cos 2z + gamma sin 2z) / z."""
    end = xs[-1]
    mask = xs >= end - TAIL_FIT_WIDTH * p.a
    z = argument_of_position(p, xs[mask])
    design = np.column_stack((np.ones_like(z), np.cos(2.0 * z), np.sin(2.0 * z))) / z[:, None]
    (alpha, beta, gamma), *_ = np.linalg.lstsq(design, density[mask], rcond=None)
    big_z = float(argument_of_position(p, end))
    return p.a * (alpha / big_z
                  - beta * math.sin(2.0 * big_z) / (2.0 * big_z ** 2)
                  + gamma * math.cos(2.0 * big_z) / (2.0 * big_z ** 2))


def quadrature_norm(p: ModelParams, table: WavefunctionTable, logger=None) -> float:
    """Integral of |psi|^2 over the whole line.

    The table must reach |x| >= 5a on both sides. Each half-line is integrated
    separately (the potential has a kink at x = 0) and closed with a tail fit.
    """
    logger = logger or silent_logger()
    tolerance = 1e-9 * p.a
    if table.x_max < MIN_TABLE_EXTENT * p.a - tolerance or table.x_min > -MIN_TABLE_EXTENT * p.a + tolerance:
        raise InvalidParameterError(
            f"table must cover |x| <= {MIN_TABLE_EXTENT:g}a, got [{table.x_min:g}, {table.x_max:g}]"
        )
    density = np.abs(table.values) ** 2
    if not np.any(density):
        return 0.0

    body = tail = 0.0
    for side in (1.0, -1.0):
        mask = table.xs * side >= 0.0
        xs = np.abs(table.xs[mask])
        ys = density[mask]
        order = np.argsort(xs)
        xs, ys = xs[order], ys[order]
        body += _richardson_simpson(xs, ys)
        tail += _tail(p, xs, ys)

    total = body + tail
    fraction = abs(tail) / total if total > 0 else math.inf
    if fraction > TAIL_WARN_FRACTION:
        message = f"tail estimate carries {fraction:.1%} of the norm; extend the table"
        logger.warning(message)
        warnings.warn(message, RuntimeWarning, stacklevel=2)
    return float(total)
