"""Numerical constants and thresholds."""

import sys

MACHINE_EPS = sys.float_info.epsilon

# Special functions
SERIES_TERM_CAP = 500
SERIES_STOP_RUN = 3            # consecutive negligible terms before stopping
SERIES_STOP_RATIO = 1e-16
BESSEL_SERIES_MAX_Z = 10.0
BESSEL_ASYMPTOTIC_MIN_Z = 30.0
BESSEL_ASYMPTOTIC_NU2_FACTOR = 1.5
BESSEL_MAX_ORDER = 50.0
BESSEL_TARGET_ABS_ERR = 1e-10
STEED_MIN_Z = 2.0              # below this cylinder_functions uses series + reflection
STEED_ITERATION_CAP = 100000
INTEGER_ORDER_BAND = 1e-8
GAMMA_MAX_REAL = 171.6

COMPLEX_SERIES_MAX_Z = 17.0
COMPLEX_ASYMPTOTIC_NU_FACTOR = 2.5
COMPLEX_ORDER_MAX_IMAG = 20.0
COMPLEX_ORDER_MAX_Z = 1e4
COMPLEX_ORDER_TOL = 1e-8

HYP2F3_MAX_ABS_W = 1e4

# Model
INTEGER_KAPPA_GUARD = 1e-6
EIGENVALUE_RESIDUAL_TOL = 1e-6

# Spectrum scan
SCAN_EDGE_MARGIN = 1e-4
EDGE_PASS_LOW = 1e-6
EDGE_PASS_HIGH = 1e-2
EDGE_PASS_STEP = 1e-5
BISECTION_WIDTH = 1e-12
BISECTION_ITERATION_CAP = 200
STATE_RESIDUAL_TOL = 1e-8

# Scattering
SCATTER_NUDGE = 1e-9
MATCHING_DET_TOL = 1e-13
SCATTER_SUCCESS_FRACTION = 0.9

# Oracle
NUMEROV_POINT_BUDGET = 10_000_000
DEFAULT_POINTS_PER_WAVELENGTH = 40
PROJECTION_X1 = 1.5            # in units of a
PROJECTION_X2 = 2.5
PROJECTION_REDRAW = 0.3
PROJECTION_REDRAW_CAP = 8
PROJECTION_DET_TOL = 1e-12
BIC_CANDIDATE_RESIDUAL = 1e-3
GOLDEN_TOL = 1e-6
TAIL_WARN_FRACTION = 0.10
MIN_EXTREMA = 12
