"""Helper functions for scans."""

import os

from joblib import Parallel, delayed

from .errors import Bic1dError
from .logger import silent_logger

THREADS_ENV = 'BIC1D_THREADS'


def scan_threads(logger=None):
    """Worker count from BIC1D_THREADS; 1 when unset or invalid."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == '':
        return 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        (logger or silent_logger()).warning(
            f"{THREADS_ENV}={raw!r} is not a positive integer, using 1 thread"
        )
        return 1
    return value


def parallel_map(func, items, n_jobs=None):
    """Map ``func`` over ``items`` keeping input order."""
    items = list(items)
    if n_jobs is None:
        n_jobs = scan_threads()
    if n_jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    return Parallel(n_jobs=n_jobs, prefer="threads")(delayed(func)(item) for item in items)


def capture(func, item):
    """Call ``func(item)`` and return ``(value, None)`` or ``(None, error)``."""
    try:
        return func(item), None
    except (Bic1dError, ArithmeticError, ValueError) as exc:
        return None, exc
