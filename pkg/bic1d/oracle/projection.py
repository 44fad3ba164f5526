"""Detects BIC energies from integrated tables alone.

A numerically integrated solution is projected onto J_{+kappa a}(z) and
J_{-kappa a}(z) at two abscissae; a BIC is a solution with no J_{-kappa a}
content. No quantization condition is used here.
"""

import numpy as np
from scipy.optimize import minimize_scalar

from ..entities.params import ModelParams, Parity
from ..entities.states import BicCandidate, ProjectionReport
from ..entities.wavefunction import WavefunctionTable
from ..mechanics.potential import argument_of_position, energy_of_order, order_of_energy
from ..specfun import bessel_j
from ..utils.constants import (
    BIC_CANDIDATE_RESIDUAL,
    GOLDEN_TOL,
    INTEGER_KAPPA_GUARD,
    PROJECTION_DET_TOL,
    PROJECTION_REDRAW,
    PROJECTION_REDRAW_CAP,
    PROJECTION_X1,
    PROJECTION_X2,
)
from ..utils.errors import Bic1dError, IllConditionedError, IntegerOrderError, InvalidParameterError
from ..utils.helpers import parallel_map, scan_threads
from ..utils.logger import silent_logger
from .numerov import integrate_parity_ode

PROJECTION_POINTS_PER_WAVELENGTH = 200
PROJECTION_BASE_STEP = 1e-2
CANDIDATE_DEDUP = 1e-6


def project_onto_basis(p: ModelParams, table: WavefunctionTable, x1: float, x2: float) -> ProjectionReport:
    """Solve psi(x_i) = c+ J_u(z_i) + c- J_-u(z_i) at the samples nearest x1 and x2."""
    order = order_of_energy(p, table.energy)
    if not order.is_real:
        raise InvalidParameterError(f"projection needs E < V0, got E={table.energy!r}")
    u = order.magnitude
    if abs(u - round(u)) <= INTEGER_KAPPA_GUARD:
        raise IntegerOrderError(f"kappa*a = {u!r} is an integer: J_u and J_-u are dependent")
    for x in (x1, x2):
        if abs(x) < p.a or not table.x_min <= x <= table.x_max:
            raise InvalidParameterError(
                f"projection point {x!r} must satisfy |x| >= a and lie in [{table.x_min:g}, {table.x_max:g}]"
            )
    i1, i2 = table.nearest_index(x1), table.nearest_index(x2)
    if i1 == i2:
        raise InvalidParameterError(f"projection points {x1!r} and {x2!r} share a sample")
    xs = table.xs[[i1, i2]]
    zs = argument_of_position(p, xs)
    matrix = np.array([[bessel_j(u, z).value, bessel_j(-u, z).value] for z in zs])
    det = np.linalg.det(matrix)
    if abs(det) < PROJECTION_DET_TOL * np.prod(np.linalg.norm(matrix, axis=1)):
        raise IllConditionedError(
            f"projection at x=({xs[0]:.4g}, {xs[1]:.4g}) is singular (|det|={abs(det):.2e})", determinant=det
        )
    c_plus, c_minus = np.linalg.solve(matrix, table.values[[i1, i2]])
    total = abs(c_plus) + abs(c_minus)
    residual = abs(c_minus) / total if total > 0 else 0.0
    return ProjectionReport(
        float(table.energy), c_plus, c_minus, float(residual), float(np.linalg.cond(matrix)),
        float(xs[0]), float(xs[1]),
    )


def project_with_redraw(p: ModelParams, table: WavefunctionTable, x1=None, x2=None) -> ProjectionReport:
    """project_onto_basis, shifting both points by 0.3a while the system is ill-conditioned."""
    x1 = PROJECTION_X1 * p.a if x1 is None else x1
    x2 = PROJECTION_X2 * p.a if x2 is None else x2
    last_error = None
    for attempt in range(PROJECTION_REDRAW_CAP + 1):
        shift = attempt * PROJECTION_REDRAW * p.a
        if x2 + shift > table.x_max:
            break
        try:
            return project_onto_basis(p, table, x1 + shift, x2 + shift)
        except IllConditionedError as exc:
            last_error = exc
    raise last_error or IllConditionedError(f"no well-conditioned projection points inside x <= {table.x_max:g}")


def orders_energy_grid(p: ModelParams, step=0.02, margin=0.01) -> np.ndarray:
    """Energies (ascending) whose kappa*a values are uniformly spaced in [margin, qa - margin]."""
    orders = np.arange(margin, p.qa - margin, step)
    return np.sort(energy_of_order(p, orders))


class ProjectionScanner:
    """Integrate-and-project scan over an energy grid."""

    def __init__(self, params: ModelParams, logger=None, n_jobs=None,
                 points_per_wavelength=PROJECTION_POINTS_PER_WAVELENGTH, base_step=PROJECTION_BASE_STEP,
                 x_max=None):
        self.params = params
        self.logger = logger or silent_logger()
        self.n_jobs = n_jobs if n_jobs is not None else scan_threads(self.logger)
        self.points_per_wavelength = points_per_wavelength
        self.base_step = base_step
        self.x_max = x_max if x_max is not None else (PROJECTION_X2 + 0.5) * params.a

    def project(self, energy, parity) -> ProjectionReport:
        table = integrate_parity_ode(self.params, energy, parity, self.x_max, self.base_step,
                                     self.points_per_wavelength)
        return project_with_redraw(self.params, table)

    def residual(self, energy, parity):
        try:
            return self.project(energy, parity).residual
        except Bic1dError as exc:
            self.logger.debug(f"projection at E={energy:.8g} ({parity.value}) failed: {exc}")
            return 1.0

    def _residual_at_order(self, u, parity):
        if not 0.0 < u < self.params.qa:
            return 1.0
        return self.residual(float(energy_of_order(self.params, u)), parity)

    def _refine(self, orders, residuals, i, parity):
        lo, hi = max(i - 1, 0), min(i + 1, len(orders) - 1)

        def f(u):
            return self._residual_at_order(u, parity)

        result = None
        if lo < i < hi:
            try:
                result = minimize_scalar(f, bracket=(orders[lo], orders[i], orders[hi]), method='golden',
                                         options={'xtol': GOLDEN_TOL})
            except (ValueError, RuntimeError):
                result = None
        if result is None:
            result = minimize_scalar(f, bounds=(orders[lo], orders[hi]), method='bounded',
                                     options={'xatol': GOLDEN_TOL * max(1.0, orders[i])})
        if result.fun < residuals[i]:
            return float(result.x), float(result.fun)
        return float(orders[i]), float(residuals[i])

    def scan(self, e_grid):
        """BIC candidates (energy-sorted) from local minima of the projection residual."""
        p = self.params
        energies = [float(e) for e in e_grid]
        for e in energies:
            if not 0.0 < e < p.v0:
                raise InvalidParameterError(f"grid energy {e!r} outside (0, V0={p.v0:g})")
        orders = [order_of_energy(p, e).magnitude for e in energies]
        orders = np.sort([u for u in orders if abs(u - round(u)) > INTEGER_KAPPA_GUARD])
        if orders.size == 0:
            return []

        candidates = []
        for parity in (Parity.EVEN, Parity.ODD):
            residuals = np.array(parallel_map(
                lambda u: self._residual_at_order(u, parity), orders, self.n_jobs
            ))
            minima = [i for i in range(len(orders))
                      if residuals[i] < 1.0
                      and (i == 0 or residuals[i] <= residuals[i - 1])
                      and (i == len(orders) - 1 or residuals[i] <= residuals[i + 1])]
            refined = parallel_map(lambda i: self._refine(orders, residuals, i, parity), minima, self.n_jobs)
            for u, residual in refined:
                if residual > BIC_CANDIDATE_RESIDUAL:
                    continue
                energy = float(energy_of_order(p, u))
                if any(c.parity is parity and abs(c.energy - energy) < CANDIDATE_DEDUP for c in candidates):
                    continue
                candidates.append(BicCandidate(energy, parity, residual))
        candidates.sort(key=lambda c: c.energy)
        self.logger.info(f"projection scan over {len(energies)} energies: {len(candidates)} candidate(s)")
        for c in candidates:
            self.logger.debug(f"  {c.parity.value:<4} E={c.energy:.8f} residual={c.residual:.2e}")
        return candidates


def bic_scan_by_projection(p: ModelParams, e_grid, logger=None, n_jobs=None,
                           points_per_wavelength=PROJECTION_POINTS_PER_WAVELENGTH):
    return ProjectionScanner(p, logger, n_jobs, points_per_wavelength).scan(e_grid)


def projection_residual(p: ModelParams, energy: float, parity: Parity,
                        points_per_wavelength=PROJECTION_POINTS_PER_WAVELENGTH) -> ProjectionReport:
    """Integrate at one energy and project; used to reconfirm spectrum states."""
    return ProjectionScanner(p, n_jobs=1, points_per_wavelength=points_per_wavelength).project(
        energy, Parity.parse(parity)
    )
