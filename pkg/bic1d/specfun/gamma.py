"""Gamma function for real and complex arguments (Lanczos, g = 7)."""

import cmath
import math

from ..utils.constants import GAMMA_MAX_REAL
from ..utils.errors import DomainError, GammaOverflowError
from .results import EvalResult, Regime

LANCZOS_G = 7.0
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
SQRT_2PI = math.sqrt(2.0 * math.pi)
LANCZOS_REL_ERR = 2e-15


def _reduce(w):
    """(n, r) with w = n + r, n the nearest integer and |r| <= 1/2; r is exact."""
    n = round(w)
    return n, w - n


def _sinpi_real(w):
    if not math.isfinite(w):
        return math.nan
    n, r = _reduce(w)
    if r == 0.0:
        return 0.0
    if abs(r) <= 0.25:
        value = math.sin(math.pi * r)
    else:
        value = math.copysign(math.cos(math.pi * (0.5 - abs(r))), r)
    return -value if n % 2 else value


def _cospi_real(w):
    if not math.isfinite(w):
        return math.nan
    n, r = _reduce(w)
    if abs(r) == 0.5:
        return 0.0
    if abs(r) <= 0.25:
        value = math.cos(math.pi * r)
    else:
        value = math.sin(math.pi * (0.5 - abs(r)))
    return -value if n % 2 else value


def sinpi(w):
    """sin(pi*w) with the argument reduced to the nearest integer; exact at integers.

    Relative accuracy holds next to the zeros, so sin(pi*(n + d)) keeps its
    digits for tiny d.
    """
    if isinstance(w, complex):
        y = math.pi * w.imag
        return complex(_sinpi_real(w.real) * math.cosh(y), _cospi_real(w.real) * math.sinh(y))
    return _sinpi_real(w)


def cospi(w):
    """cos(pi*w) with the argument reduced to the nearest integer; exact at half-integers."""
    if isinstance(w, complex):
        y = math.pi * w.imag
        return complex(_cospi_real(w.real) * math.cosh(y), -_sinpi_real(w.real) * math.sinh(y))
    return _cospi_real(w)


def _as_number(w):
    if isinstance(w, complex):
        return complex(w) if w.imag != 0.0 else float(w.real)
    return float(w)


def _is_pole(w):
    return not isinstance(w, complex) and w <= 0.0 and w == math.floor(w)


def _lanczos(w):
    """Gamma(w) for Re(w) >= 0.5."""
    w = w - 1.0
    acc = LANCZOS_COEFFICIENTS[0]
    for i in range(1, len(LANCZOS_COEFFICIENTS)):
        acc += LANCZOS_COEFFICIENTS[i] / (w + i)
    t = w + LANCZOS_G + 0.5
    if isinstance(w, complex):
        return SQRT_2PI * cmath.exp((w + 0.5) * cmath.log(t) - t) * acc
    # split power keeps t**(w+1/2) finite up to the overflow threshold
    half = t ** (0.5 * (w + 0.5))
    return SQRT_2PI * half * math.exp(-t) * half * acc


def gamma(w) -> EvalResult:
    """Gamma(w); Lanczos for Re(w) >= 1/2, reflection formula otherwise."""
    w = _as_number(w)
    if _is_pole(w):
        raise DomainError(f"Gamma has a pole at w={w!r}")
    if w.real > GAMMA_MAX_REAL:
        raise GammaOverflowError(f"Gamma({w!r}) overflows double precision")

    if w.real >= 0.5:
        value = _lanczos(w)
        regime = Regime.SERIES
    else:
        s = sinpi(w)
        if 1.0 - w.real > GAMMA_MAX_REAL:
            raise GammaOverflowError(f"Gamma({w!r}) is outside the representable range")
        value = math.pi / (s * _lanczos(1.0 - w))
        regime = Regime.REFLECTION

    scale = 1.0 + (abs(w.imag) if isinstance(w, complex) else 0.0)
    return EvalResult(value, abs(value) * LANCZOS_REL_ERR * scale, regime)


def reciprocal_gamma(w):
    """1/Gamma(w); exactly zero at the poles, zero when Gamma overflows."""
    w = _as_number(w)
    if _is_pole(w):
        return 0.0
    if w.real > GAMMA_MAX_REAL:
        return 0.0
    if w.real < 0.5:
        # 1/Gamma(w) = sin(pi w) Gamma(1-w) / pi, entire and finite here
        if 1.0 - w.real > GAMMA_MAX_REAL:
            raise GammaOverflowError(f"1/Gamma({w!r}) overflows double precision")
        return sinpi(w) * _lanczos(1.0 - w) / math.pi
    return 1.0 / _lanczos(w)
