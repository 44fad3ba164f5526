"""Special-function kernel: Gamma, Bessel J/Y/Hankel, complex-order J, 2F3."""

from .bessel import (
    HankelKind,
    bessel_j,
    bessel_j_prime,
    bessel_y,
    cylinder_functions,
    hankel,
    select_regime,
)
from .complex_order import (
    bessel_j_complex_order,
    bessel_j_complex_order_prime,
    hankel_complex_order,
    hankel_complex_order_prime,
)
from .gamma import cospi, gamma, reciprocal_gamma, sinpi
from .hypergeometric import hyp2f3
from .results import EvalResult, Regime

__all__ = [
    'EvalResult',
    'Regime',
    'HankelKind',
    'gamma',
    'reciprocal_gamma',
    'sinpi',
    'cospi',
    'bessel_j',
    'bessel_j_prime',
    'bessel_y',
    'hankel',
    'cylinder_functions',
    'select_regime',
    'bessel_j_complex_order',
    'bessel_j_complex_order_prime',
    'hankel_complex_order',
    'hankel_complex_order_prime',
    'hyp2f3',
]
