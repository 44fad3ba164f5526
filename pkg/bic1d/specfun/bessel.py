"""Bessel functions of arbitrary real order for positive real argument.

Three regimes:

* ascending power series for z <= 10,
* Steed's method (CF1 + CF2 with Wronskian normalization) in between,
* Hankel's asymptotic expansion for z >= max(30, 1.5 nu^2).

Negative orders in the continued-fraction and asymptotic regimes come from
J_{-nu} = cos(nu pi) J_nu - sin(nu pi) Y_nu with exact sinpi/cospi.
"""

import math
from enum import Enum

from ..utils.constants import (
    BESSEL_ASYMPTOTIC_MIN_Z,
    BESSEL_ASYMPTOTIC_NU2_FACTOR,
    BESSEL_MAX_ORDER,
    BESSEL_SERIES_MAX_Z,
    BESSEL_TARGET_ABS_ERR,
    INTEGER_ORDER_BAND,
    MACHINE_EPS,
    SERIES_STOP_RATIO,
    SERIES_STOP_RUN,
    SERIES_TERM_CAP,
    STEED_ITERATION_CAP,
    STEED_MIN_Z,
)
from ..utils.errors import (
    AccuracyLossError,
    ConvergenceError,
    DomainError,
    InvalidParameterError,
    NearIntegerOrderError,
)
from .gamma import cospi, reciprocal_gamma, sinpi
from .results import EvalResult, Regime
from .summation import CompensatedSum

FPMIN = 1e-300
STEED_EPS = 4.0 * MACHINE_EPS
ASYMPTOTIC_TERM_CAP = 200
# the model sweeps |nu| up to 50; nu +- 1 is evaluated for derivatives
_INTERNAL_MAX_ORDER = BESSEL_MAX_ORDER + 1.0


class HankelKind(Enum):
    H1 = "H1"
    H2 = "H2"


def _check_argument(nu, z, max_order=BESSEL_MAX_ORDER):
    if not (isinstance(z, (int, float)) and math.isfinite(z)) or z <= 0.0:
        raise DomainError(f"argument z must be a positive real, got {z!r}")
    if not math.isfinite(nu) or abs(nu) > max_order:
        raise InvalidParameterError(f"order |nu| must be <= {max_order:g}, got {nu!r}")


def select_regime(nu, z):
    """Regime used by default for J_nu(z)."""
    if z <= BESSEL_SERIES_MAX_Z:
        return Regime.SERIES
    if z >= max(BESSEL_ASYMPTOTIC_MIN_Z, BESSEL_ASYMPTOTIC_NU2_FACTOR * nu * nu):
        return Regime.ASYMPTOTIC
    return Regime.CONTINUED_FRACTION


def _is_integer(nu):
    return nu == math.floor(nu)


# --- ascending series -----------------------------------------------------

def _series(nu, z):
    """(J_nu(z), J'_nu(z), abs_err) by the ascending series."""
    if nu < 0 and _is_integer(nu):
        j, jp, err = _series(-nu, z)
        sign = -1.0 if int(-nu) % 2 else 1.0
        return sign * j, sign * jp, err

    half = 0.5 * z
    try:
        term = half ** nu * reciprocal_gamma(nu + 1.0)
    except OverflowError as exc:
        raise AccuracyLossError(f"J_{nu}({z}) overflows double precision") from exc
    if not math.isfinite(term):
        raise AccuracyLossError(f"J_{nu}({z}) overflows double precision")

    quarter = -half * half
    total = CompensatedSum()
    deriv = CompensatedSum()
    negligible = 0
    k = 0
    while True:
        total.add(term)
        deriv.add(term * (nu + 2.0 * k))
        past_peak = k + 1 > half and k > -nu
        if past_peak and abs(term) < SERIES_STOP_RATIO * total.max_partial:
            negligible += 1
            if negligible >= SERIES_STOP_RUN:
                break
        else:
            negligible = 0
        if term == 0.0 and past_peak:
            break
        k += 1
        if k > SERIES_TERM_CAP:
            raise ConvergenceError(
                f"J_{nu}({z}) series did not converge in {SERIES_TERM_CAP} terms",
                abs_err=total.max_term * MACHINE_EPS,
            )
        term *= quarter / (k * (nu + k))

    err = MACHINE_EPS * (abs(total.value) + 4.0 * total.max_term)
    return total.value, deriv.value / z, err


# --- Steed's method --------------------------------------------------------

def _steed(nu, x):
    """(J, J', Y, Y') for nu >= 0 and x >= 2 (CF1 + CF2, Wronskian-normalized)."""
    nl = int(nu + 0.5)
    xmu = nu - nl
    xmu2 = xmu * xmu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    w = xi2 / math.pi

    # CF1: f_nu = J'_nu / J_nu
    isign = 1
    h = nu * xi
    if h < FPMIN:
        h = FPMIN
    b = xi2 * nu
    d = 0.0
    c = h
    for _ in range(STEED_ITERATION_CAP):
        b += xi2
        d = b - d
        if abs(d) < FPMIN:
            d = FPMIN
        c = b - 1.0 / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = c * d
        h *= delta
        if d < 0.0:
            isign = -isign
        if abs(delta - 1.0) < STEED_EPS:
            break
    else:
        raise ConvergenceError(f"CF1 for J_{nu}({x}) did not converge")

    # downward recurrence to |mu| <= 1/2 with unnormalized values
    rjl = isign * 1e-30
    rjpl = h * rjl
    rjl1 = rjl
    rjp1 = rjpl
    fact = nu * xi
    for _ in range(nl, 0, -1):
        rjtemp = fact * rjl + rjpl
        fact -= xi
        rjpl = fact * rjtemp - rjl
        rjl = rjtemp
    if rjl == 0.0:
        rjl = MACHINE_EPS
    f = rjpl / rjl

    # CF2: p + iq for order mu
    a = 0.25 - xmu2
    p = -0.5 * xi
    q = 1.0
    br = 2.0 * x
    bi = 2.0
    fact = a * xi / (p * p + q * q)
    cr = br + q * fact
    ci = bi + p * fact
    den = br * br + bi * bi
    dr = br / den
    di = -bi / den
    dlr = cr * dr - ci * di
    dli = cr * di + ci * dr
    temp = p * dlr - q * dli
    q = p * dli + q * dlr
    p = temp
    for i in range(2, STEED_ITERATION_CAP):
        a += 2 * (i - 1)
        bi += 2.0
        dr = a * dr + br
        di = a * di + bi
        if abs(dr) + abs(di) < FPMIN:
            dr = FPMIN
        fact = a / (cr * cr + ci * ci)
        cr = br + cr * fact
        ci = bi - ci * fact
        if abs(cr) + abs(ci) < FPMIN:
            cr = FPMIN
        den = dr * dr + di * di
        dr /= den
        di /= -den
        dlr = cr * dr - ci * di
        dli = cr * di + ci * dr
        temp = p * dlr - q * dli
        q = p * dli + q * dlr
        p = temp
        if abs(dlr - 1.0) + abs(dli) < STEED_EPS:
            break
    else:
        raise ConvergenceError(f"CF2 for J_{nu}({x}) did not converge")

    gam = (p - f) / q
    rjmu = math.sqrt(w / ((p - f) * gam + q))
    rjmu = math.copysign(rjmu, rjl)
    rymu = rjmu * gam
    rymup = rymu * (p + q / gam)
    ry1 = xmu * xi * rymu - rymup
    scale = rjmu / rjl
    rj = rjl1 * scale
    rjp = rjp1 * scale
    for i in range(1, nl + 1):
        rytemp = (xmu + i) * xi2 * ry1 - rymu
        rymu = ry1
        ry1 = rytemp
    return rj, rjp, rymu, nu * xi * rymu - ry1


# --- Hankel asymptotic expansion ------------------------------------------

def _asymptotic(nu, z):
    """(J, J', Y, Y', abs_err) from Hankel's expansion for large z."""
    mu = 4.0 * nu * nu
    # P, Q for the function; R, S for its derivative
    p_sum, q_sum = CompensatedSum(), CompensatedSum()
    r_sum, s_sum = CompensatedSum(), CompensatedSum()
    a_k = 1.0           # a_k(nu) / z^k
    b_k = 1.0
    last = math.inf
    err = 0.0
    for k in range(ASYMPTOTIC_TERM_CAP):
        if k > 0:
            a_prev = a_k
            a_k = a_prev * (mu - (2 * k - 1) ** 2) / (8.0 * k * z)
            b_k = a_prev * (mu + 4.0 * k * k - 1.0) / (8.0 * k * z)
        size = abs(a_k) + abs(b_k)
        if size > last:
            err = last
            break
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p_sum.add(sign * a_k)
            r_sum.add(sign * b_k)
        else:
            q_sum.add(sign * a_k)
            s_sum.add(sign * b_k)
        last = size
        if size < 1e-2 * MACHINE_EPS:
            err = size
            break
    else:
        err = last

    phase = 0.5 * nu + 0.25
    cz, sz = math.cos(z), math.sin(z)
    cp, sp = cospi(phase), sinpi(phase)
    cos_chi = cz * cp + sz * sp
    sin_chi = sz * cp - cz * sp
    amp = math.sqrt(2.0 / (math.pi * z))
    pv, qv, rv, sv = p_sum.value, q_sum.value, r_sum.value, s_sum.value
    j = amp * (pv * cos_chi - qv * sin_chi)
    y = amp * (pv * sin_chi + qv * cos_chi)
    # J'_nu = -amp (R sin chi + S cos chi), Y'_nu = amp (R cos chi - S sin chi)
    jp = -amp * (rv * sin_chi + sv * cos_chi)
    yp = amp * (rv * cos_chi - sv * sin_chi)
    abs_err = amp * (err + MACHINE_EPS * (1.0 + z * MACHINE_EPS))
    return j, jp, y, yp, abs_err


# --- public kernels -------------------------------------------------------

def _reflect_negative(nu, j, jp, y, yp):
    """Values at order -nu from values at nu > 0."""
    c, s = cospi(nu), sinpi(nu)
    return (c * j - s * y, c * jp - s * yp, s * j + c * y, s * jp + c * yp)


def _evaluate_j(nu, z, regime):
    if regime is Regime.SERIES:
        j, jp, err = _series(nu, z)
        return j, jp, err
    if regime is Regime.CONTINUED_FRACTION:
        if z < STEED_MIN_Z:
            raise InvalidParameterError(f"continued fraction needs z >= {STEED_MIN_Z:g}")
        j, jp, y, yp = _steed(abs(nu), z)
        err = 50.0 * MACHINE_EPS * (abs(j) + MACHINE_EPS * abs(y)) + MACHINE_EPS
        if nu < 0:
            # cos/sin weights carry one rounding each onto |J_nu| and |Y_nu|
            err += 50.0 * MACHINE_EPS * (abs(j) + abs(y))
            j, jp, y, yp = _reflect_negative(-nu, j, jp, y, yp)
        return j, jp, err
    if regime is Regime.ASYMPTOTIC:
        j, jp, y, yp, err = _asymptotic(nu, z)
        return j, jp, err
    raise InvalidParameterError(f"regime {regime.value} does not apply to J")


def bessel_j(nu, z, regime=None) -> EvalResult:
    """J_nu(z) for real order |nu| <= 50 and z > 0.

    ``regime`` forces a branch; by default it is chosen by ``select_regime``.
    """
    _check_argument(nu, z)
    return _bessel_j(float(nu), float(z), regime)


def _bessel_j(nu, z, regime=None):
    regime = regime or select_regime(nu, z)
    value, _, err = _evaluate_j(nu, z, regime)
    if err > BESSEL_TARGET_ABS_ERR * max(1.0, abs(value)):
        raise AccuracyLossError(
            f"J_{nu}({z}) error estimate {err:.2e} above tolerance in regime {regime.value}",
            abs_err=err,
        )
    return EvalResult(value, err, regime)


def bessel_j_prime(nu, z, regime=None) -> EvalResult:
    """J'_nu(z) = (J_{nu-1}(z) - J_{nu+1}(z)) / 2."""
    _check_argument(nu, z)
    nu, z = float(nu), float(z)
    lower = _bessel_j(nu - 1.0, z, regime)
    upper = _bessel_j(nu + 1.0, z, regime)
    return EvalResult(
        0.5 * (lower.value - upper.value),
        0.5 * (lower.abs_err + upper.abs_err),
        select_regime(nu, z) if regime is None else regime,
    )


def _check_non_integer(nu):
    if abs(nu - round(nu)) <= INTEGER_ORDER_BAND:
        raise NearIntegerOrderError(nu, INTEGER_ORDER_BAND)


def bessel_y(nu, z) -> EvalResult:
    """Y_nu(z) = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi) for non-integer nu."""
    _check_argument(nu, z)
    nu, z = float(nu), float(z)
    _check_non_integer(nu)
    plus = _bessel_j(nu, z)
    minus = _bessel_j(-nu, z)
    c, s = cospi(nu), sinpi(nu)
    value = (plus.value * c - minus.value) / s
    # the numerator cancels as nu nears an integer; rounding grows by 1/|sin(nu pi)|
    cancellation = MACHINE_EPS * (abs(c * plus.value) + abs(minus.value)) / abs(s)
    err = (abs(c) * plus.abs_err + minus.abs_err) / abs(s) + cancellation + MACHINE_EPS * abs(value)
    return EvalResult(value, err, Regime.REFLECTION)


def hankel(kind, nu, z) -> EvalResult:
    """H^(1)_nu = J_nu + i Y_nu and H^(2)_nu = J_nu - i Y_nu."""
    kind = HankelKind(kind) if not isinstance(kind, HankelKind) else kind
    y = bessel_y(nu, z)
    j = _bessel_j(float(nu), float(z))
    sign = 1.0 if kind is HankelKind.H1 else -1.0
    return EvalResult(complex(j.value, sign * y.value), j.abs_err + y.abs_err, Regime.REFLECTION)


def cylinder_functions(nu, z):
    """(J_nu, J'_nu, Y_nu, Y'_nu) at any real order, integer orders included.

    Steed's method for z >= 2; below that the series with the reflection
    formula, which the caller must keep away from exact integer orders.
    """
    _check_argument(nu, z, _INTERNAL_MAX_ORDER)
    nu, z = float(nu), float(z)
    if z >= STEED_MIN_Z:
        j, jp, y, yp = _steed(abs(nu), z)
        if nu < 0:
            j, jp, y, yp = _reflect_negative(-nu, j, jp, y, yp)
        return j, jp, y, yp
    if _is_integer(nu):
        raise NearIntegerOrderError(nu, 0.0)
    j, jp, _ = _series(nu, z)
    jm, jmp, _ = _series(-nu, z)
    c, s = cospi(nu), sinpi(nu)
    return j, jp, (j * c - jm) / s, (jp * c - jmp) / s
