"""The generalized hypergeometric function 2F3 by its ascending series."""

import math

from ..utils.constants import (
    HYP2F3_MAX_ABS_W,
    MACHINE_EPS,
    SERIES_STOP_RATIO,
    SERIES_STOP_RUN,
    SERIES_TERM_CAP,
)
from ..utils.errors import ConvergenceError, DomainError, InvalidParameterError
from .results import EvalResult, Regime
from .summation import CompensatedSum


def _is_nonpositive_integer(b):
    return b <= 0 and b == math.floor(b)


def hyp2f3(a1, a2, b1, b2, b3, w) -> EvalResult:
    """2F3(a1, a2; b1, b2, b3; w) = sum_k (a1)_k (a2)_k / ((b1)_k (b2)_k (b3)_k) w^k / k!

    Stops once three consecutive terms fall below 1e-16 of the largest
    partial sum seen; ``abs_err`` carries the cancellation estimate
    (largest partial sum times machine epsilon).
    """
    for b in (b1, b2, b3):
        if _is_nonpositive_integer(b):
            raise DomainError(f"2F3 has a pole: b-parameter {b!r} is a non-positive integer")
    if not math.isfinite(w) or abs(w) > HYP2F3_MAX_ABS_W:
        raise InvalidParameterError(f"|w| must be <= {HYP2F3_MAX_ABS_W:g}, got {w!r}")

    total = CompensatedSum()
    term = 1.0
    negligible = 0
    for k in range(SERIES_TERM_CAP + 1):
        total.add(term)
        if abs(term) < SERIES_STOP_RATIO * total.max_partial:
            negligible += 1
            if negligible >= SERIES_STOP_RUN:
                break
        else:
            negligible = 0
        term *= (a1 + k) * (a2 + k) / ((b1 + k) * (b2 + k) * (b3 + k)) * w / (k + 1)
    else:
        raise ConvergenceError(
            f"2F3 series did not converge in {SERIES_TERM_CAP} terms",
            abs_err=total.max_partial * MACHINE_EPS,
        )

    abs_err = MACHINE_EPS * (total.max_partial + total.count * total.max_term)
    return EvalResult(total.value, abs_err, Regime.SERIES)
