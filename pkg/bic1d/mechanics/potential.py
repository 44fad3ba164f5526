"""The bottomless exponential barrier V(x) = -V0 [exp(2|x|/a) - 1]."""

import math

import numpy as np

from ..entities.params import ModelParams, OrderKind, OrderValue
from ..utils.errors import PotentialOverflowError

MAX_EXPONENT = math.log(np.finfo(float).max)


def potential(p: ModelParams, x: float) -> float:
    exponent = 2.0 * abs(x) / p.a
    if exponent > MAX_EXPONENT:
        raise PotentialOverflowError(f"exp(2|x|/a) overflows at x={x!r} for a={p.a!r}")
    return -p.v0 * math.expm1(exponent)


def order_of_energy(p: ModelParams, energy: float) -> OrderValue:
    """kappa*a, real for E <= V0 and imaginary above the barrier top."""
    if energy <= p.v0:
        return OrderValue(OrderKind.REAL, p.a * math.sqrt((p.v0 - energy) / p.h2m))
    return OrderValue(OrderKind.IMAGINARY, p.a * math.sqrt((energy - p.v0) / p.h2m))


def energy_of_order(p: ModelParams, u: float) -> float:
    """Inverse of order_of_energy on the real branch: E = V0 - u^2 h2m / a^2."""
    return p.v0 - u * u * p.h2m / (p.a * p.a)


def argument_of_position(p: ModelParams, x):
    """z = qa exp(|x|/a); works on scalars and numpy arrays."""
    return p.qa * np.exp(np.abs(x) / p.a)


def local_k2(p: ModelParams, energy: float):
    """k^2(x) = (E - V(x)) / h2m = q^2 exp(2|x|/a) - kappa^2, as a scalar callable."""
    kappa2 = (p.v0 - energy) / p.h2m
    q2 = p.q2
    a = p.a

    def k2(x):
        return q2 * math.exp(2.0 * abs(x) / a) - kappa2

    return k2
