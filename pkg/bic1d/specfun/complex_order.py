"""Bessel and Hankel functions of complex order for positive real argument.

Needed above the barrier top, where kappa is imaginary and the order of the
Bessel equation becomes i|kappa|a.
"""

import cmath
import math

from ..utils.constants import (
    COMPLEX_ASYMPTOTIC_NU_FACTOR,
    COMPLEX_ORDER_MAX_IMAG,
    COMPLEX_ORDER_MAX_Z,
    COMPLEX_ORDER_TOL,
    COMPLEX_SERIES_MAX_Z,
    MACHINE_EPS,
    SERIES_STOP_RATIO,
    SERIES_STOP_RUN,
    SERIES_TERM_CAP,
)
from ..utils.errors import ConvergenceError, DomainError, InvalidParameterError
from .bessel import HankelKind
from .gamma import reciprocal_gamma, sinpi
from .results import EvalResult, Regime
from .summation import CompensatedSum

ASYMPTOTIC_TERM_CAP = 400


def _check(nu, z):
    if not (isinstance(z, (int, float)) and math.isfinite(z)) or z <= 0.0:
        raise DomainError(f"argument z must be a positive real, got {z!r}")
    if z > COMPLEX_ORDER_MAX_Z:
        raise InvalidParameterError(f"z must be <= {COMPLEX_ORDER_MAX_Z:g}, got {z!r}")
    if abs(nu.imag) > COMPLEX_ORDER_MAX_IMAG:
        raise InvalidParameterError(f"|Im nu| must be <= {COMPLEX_ORDER_MAX_IMAG:g}, got {nu!r}")


def _series(nu, z):
    if nu.imag == 0.0 and nu.real < 0 and nu.real == math.floor(nu.real):
        # J_{-m} = (-1)^m J_m
        value, err = _series(-nu, z)
        return (-value if int(-nu.real) % 2 else value), err
    half = 0.5 * z
    term = cmath.exp(nu * math.log(half)) * reciprocal_gamma(nu + 1.0)
    quarter = -half * half
    total = CompensatedSum()
    negligible = 0
    k = 0
    while True:
        total.add(complex(term))
        past_peak = k + 1 > half and k > -nu.real
        if past_peak and abs(term) < SERIES_STOP_RATIO * total.max_partial:
            negligible += 1
            if negligible >= SERIES_STOP_RUN:
                break
        else:
            negligible = 0
        k += 1
        if k > SERIES_TERM_CAP:
            raise ConvergenceError(
                f"J_{nu}({z}) series did not converge in {SERIES_TERM_CAP} terms",
                abs_err=total.max_term * MACHINE_EPS,
            )
        term *= quarter / (k * (nu + k))
    return total.value, MACHINE_EPS * (abs(total.value) + 4.0 * total.max_term)


def _asymptotic(nu, z):
    mu = 4.0 * nu * nu
    p_sum, q_sum = CompensatedSum(), CompensatedSum()
    a_k = 1.0 + 0.0j
    last = math.inf
    err = 0.0
    for k in range(ASYMPTOTIC_TERM_CAP):
        if k > 0:
            a_k *= (mu - (2 * k - 1) ** 2) / (8.0 * k * z)
        size = abs(a_k)
        if k > 4 and size > last:
            err = last
            break
        sign = -1.0 if (k // 2) % 2 else 1.0
        (p_sum if k % 2 == 0 else q_sum).add(complex(sign * a_k))
        last = size
        if size < 1e-2 * MACHINE_EPS * max(1.0, p_sum.max_partial):
            err = size
            break
    else:
        err = last
    chi = z - (0.5 * nu + 0.25) * math.pi
    amp = math.sqrt(2.0 / (math.pi * z))
    cos_chi, sin_chi = cmath.cos(chi), cmath.sin(chi)
    value = amp * (p_sum.value * cos_chi - q_sum.value * sin_chi)
    scale = abs(cos_chi) + abs(sin_chi)
    return value, amp * scale * (err + MACHINE_EPS * max(p_sum.max_partial, q_sum.max_partial, 1.0))


def _evaluate(nu, z):
    if z <= COMPLEX_SERIES_MAX_Z:
        value, err = _series(nu, z)
        regime = Regime.SERIES
    elif z >= COMPLEX_ASYMPTOTIC_NU_FACTOR * abs(nu):
        value, err = _asymptotic(nu, z)
        regime = Regime.ASYMPTOTIC
    else:
        value, err = _series(nu, z)
        regime = Regime.SERIES
    if not (cmath.isfinite(value) and err <= COMPLEX_ORDER_TOL * max(1.0, abs(value))):
        raise ConvergenceError(
            f"J_{nu}({z}) error estimate {err:.2e} above tolerance", abs_err=err
        )
    return EvalResult(value, err, regime)


def bessel_j_complex_order(nu, z) -> EvalResult:
    """J_nu(z) for complex order nu and real z > 0."""
    nu = complex(nu)
    _check(nu, z)
    return _evaluate(nu, float(z))


def bessel_j_complex_order_prime(nu, z) -> EvalResult:
    """J'_nu(z) = (J_{nu-1}(z) - J_{nu+1}(z)) / 2 at complex order."""
    nu = complex(nu)
    _check(nu, z)
    lower = _evaluate(nu - 1.0, float(z))
    upper = _evaluate(nu + 1.0, float(z))
    return EvalResult(0.5 * (lower.value - upper.value), 0.5 * (lower.abs_err + upper.abs_err), lower.regime)


def _hankel_from_j(kind, nu, j_plus, j_minus):
    s = sinpi(nu)
    if abs(s) < 1e-12:
        raise InvalidParameterError(f"Hankel functions of order {nu!r} need sin(nu pi) != 0")
    if kind is HankelKind.H1:
        return (j_minus - cmath.exp(-1j * math.pi * nu) * j_plus) / (1j * s)
    return (j_minus - cmath.exp(1j * math.pi * nu) * j_plus) / (-1j * s)


def hankel_complex_order(kind, nu, z) -> EvalResult:
    """H^(1,2)_nu(z) at complex order from J_nu and J_{-nu}."""
    kind = HankelKind(kind) if not isinstance(kind, HankelKind) else kind
    nu = complex(nu)
    _check(nu, z)
    plus = _evaluate(nu, float(z))
    minus = _evaluate(-nu, float(z))
    s = abs(sinpi(nu))
    value = _hankel_from_j(kind, nu, plus.value, minus.value)
    growth = abs(cmath.exp(1j * math.pi * nu)) + abs(cmath.exp(-1j * math.pi * nu))
    err = (minus.abs_err + growth * plus.abs_err) / max(s, 1e-300)
    return EvalResult(value, err, plus.regime)


def hankel_complex_order_prime(kind, nu, z) -> EvalResult:
    """d/dz H^(1,2)_nu(z) at complex order."""
    kind = HankelKind(kind) if not isinstance(kind, HankelKind) else kind
    nu = complex(nu)
    _check(nu, z)
    plus = bessel_j_complex_order_prime(nu, z)
    minus = bessel_j_complex_order_prime(-nu, z)
    s = abs(sinpi(nu))
    value = _hankel_from_j(kind, nu, plus.value, minus.value)
    growth = abs(cmath.exp(1j * math.pi * nu)) + abs(cmath.exp(-1j * math.pi * nu))
    err = (minus.abs_err + growth * plus.abs_err) / max(s, 1e-300)
    return EvalResult(value, err, plus.regime)
