import math

import numpy as np
from scipy import special

from ..entities.params import ModelParams, Parity
from ..entities.states import BicState, NormParams, NormReport
from ..specfun import bessel_j, bessel_j_prime, gamma, hyp2f3
from ..utils.constants import (
    BISECTION_ITERATION_CAP,
    BISECTION_WIDTH,
    EDGE_PASS_HIGH,
    EDGE_PASS_LOW,
    EDGE_PASS_STEP,
    SCAN_EDGE_MARGIN,
    STATE_RESIDUAL_TOL,
)
from ..utils.errors import AccuracyLossError, ConvergenceError, InvalidParameterError
from ..utils.helpers import parallel_map, scan_threads
from ..utils.logger import silent_logger

NORM_REL_TOL = 1e-8
QUADRATURE_SPAN = 2000.0
QUADRATURE_NODES = 24
ROOT_DEDUP = 1e-9


def condition(p: ModelParams, parity: Parity, u: float) -> float:
    """Quantization condition at order u: J'_u(qa) (even) or J_u(qa) (odd)."""
    parity = Parity.parse(parity)
    if not 0.0 < u < p.qa:
        raise InvalidParameterError(f"order u must lie in (0, qa={p.qa:.6g}), got {u!r}")
    if parity is Parity.EVEN:
        return bessel_j_prime(u, p.qa).value
    return bessel_j(u, p.qa).value


def closed_form_integral(norm: NormParams) -> float:
    """int_s^inf J_r(t)^2 dt / t for r > 0.

    = 1/(2r) - 4^-r s^2r Gamma(2r) / (Gamma(1+r)^2 Gamma(1+2r)) * 2F3(r, r+1/2; r+1, r+1, 2r+1; -s^2)
    """
    r, s = norm.r, norm.s
    if r <= 0.0:
        raise InvalidParameterError(
            f"closed-form norm needs r > 0 (got r={r!r}); use quadrature_norm_report for r <= 0"
        )
    series = hyp2f3(r, r + 0.5, r + 1.0, r + 1.0, 2.0 * r + 1.0, -s * s)
    g = gamma(1.0 + r).value
    prefactor = math.exp(2.0 * r * math.log(0.5 * s)) * gamma(2.0 * r).value / (g * g * gamma(1.0 + 2.0 * r).value)
    integral = 0.5 / r - prefactor * series.value
    err = prefactor * series.abs_err
    if not integral > 0.0 or err > NORM_REL_TOL * integral:
        raise AccuracyLossError(
            f"closed-form norm for r={r:.6g}, s={s:.6g} lost accuracy "
            f"(integral {integral:.3e}, error {err:.2e})",
            abs_err=err,
        )
    return integral


def norm_sq_closed_form(norm: NormParams, a: float) -> float:
    """Full-line norm of J_r(qa exp(|x|/a)): 2a times the half-line integral."""
    if a <= 0.0:
        raise InvalidParameterError(f"length a must be positive, got {a!r}")
    return 2.0 * a * closed_form_integral(norm)


def quadrature_norm_report(r: float, s: float, span=QUADRATURE_SPAN) -> NormReport:
    """Direct quadrature of int_s^inf J_r(t)^2 dt / t, any real r.

    Gauss-Legendre panels of unit width up to s + span, then the leading
    asymptotic tail (1/pi) [1/T + cos(2T - r pi) / (2T^2)].
    """
    norm = NormParams(r, s)
    nodes, weights = np.polynomial.legendre.leggauss(QUADRATURE_NODES)
    edges = np.arange(0.0, span, 1.0) + s
    centres = edges + 0.5
    t = (centres[:, None] + 0.5 * nodes[None, :]).ravel()
    w = np.tile(0.5 * weights, edges.size)
    integrand = special.jv(norm.r, t) ** 2 / t
    body = float(np.sum(w * integrand))
    end = s + edges.size
    tail = (1.0 / end + math.cos(2.0 * end - norm.r * math.pi) / (2.0 * end * end)) / math.pi
    closed = None
    if norm.r > 0.0:
        try:
            closed = closed_form_integral(norm)
        except AccuracyLossError:
            closed = None
    return NormReport(norm.r, norm.s, body + tail, tail, closed)


class SpectrumManager:
    """Finds the bound states in the continuum of one parameter set."""

    def __init__(self, params: ModelParams, logger=None, n_jobs=None, scan_resolution=1e-3):
        self.params = params
        self.logger = logger or silent_logger()
        self.n_jobs = n_jobs if n_jobs is not None else scan_threads(self.logger)
        self.scan_resolution = scan_resolution

    def condition(self, parity, u):
        return condition(self.params, parity, u)

    def condition_curve(self, energies):
        """Both conditions sampled against energy, for plotting."""
        rows = []
        for energy in energies:
            u = self.params.a * math.sqrt(max(self.params.v0 - energy, 0.0) / self.params.h2m)
            if not 0.0 < u < self.params.qa:
                continue
            rows.append({
                'energy': float(energy),
                'kappa_a': u,
                'even_condition': condition(self.params, Parity.EVEN, u),
                'odd_condition': condition(self.params, Parity.ODD, u),
            })
        return rows

    def _scan_chunk(self, grid):
        roots = []
        for parity in (Parity.EVEN, Parity.ODD):
            values = [condition(self.params, parity, u) for u in grid]
            for i in range(len(grid) - 1):
                f_lo, f_hi = values[i], values[i + 1]
                if f_lo == 0.0:
                    roots.append((parity, grid[i], 0.0))
                elif f_lo * f_hi < 0.0:
                    roots.append(self._refine(parity, grid[i], grid[i + 1], f_lo, f_hi))
            if values and values[-1] == 0.0:
                roots.append((parity, grid[-1], 0.0))
        return roots

    def _refine(self, parity, lo, hi, f_lo, f_hi):
        """Bisection to width 1e-12 in u, then one secant step."""
        for _ in range(BISECTION_ITERATION_CAP):
            if hi - lo <= BISECTION_WIDTH:
                break
            mid = 0.5 * (lo + hi)
            f_mid = condition(self.params, parity, mid)
            if f_mid == 0.0:
                return parity, mid, 0.0
            if (f_mid < 0.0) == (f_lo < 0.0):
                lo, f_lo = mid, f_mid
            else:
                hi, f_hi = mid, f_mid
        else:
            raise ConvergenceError(f"{parity.value} bracket [{lo!r}, {hi!r}] did not shrink")
        u = lo - f_lo * (hi - lo) / (f_hi - f_lo) if f_hi != f_lo else 0.5 * (lo + hi)
        u = min(max(u, lo), hi)
        residual = abs(condition(self.params, parity, u))
        if residual > STATE_RESIDUAL_TOL:
            raise ConvergenceError(
                f"{parity.value} root near u={u!r} has residual {residual:.2e}"
            )
        return parity, u, residual

    def _scan(self, grid):
        chunk_count = max(1, min(len(grid) - 1, 4 * self.n_jobs))
        bounds = np.linspace(0, len(grid) - 1, chunk_count + 1).astype(int)
        chunks = [grid[bounds[i]:bounds[i + 1] + 1] for i in range(chunk_count)]
        found = parallel_map(self._scan_chunk, chunks, self.n_jobs)
        return [root for chunk_roots in found for root in chunk_roots]

    @staticmethod
    def _grid(lo, hi, step):
        grid = np.arange(lo, hi, step)
        if grid.size == 0 or grid[-1] < hi:
            grid = np.append(grid, hi)
        return grid

    def find_bic_spectrum(self, scan_resolution=None):
        """All BIC states, sorted by energy, from a uniform scan in u = kappa*a."""
        resolution = scan_resolution if scan_resolution is not None else self.scan_resolution
        if not 1e-6 < resolution < 1e-1:
            raise InvalidParameterError(f"scan_resolution must lie in (1e-6, 1e-1), got {resolution!r}")
        p = self.params
        lo, hi = SCAN_EDGE_MARGIN, p.qa - SCAN_EDGE_MARGIN
        roots = []
        if hi > lo:
            roots.extend(self._scan(self._grid(lo, hi, resolution)))
        edge_hi = min(EDGE_PASS_HIGH, p.qa - SCAN_EDGE_MARGIN)
        if edge_hi > EDGE_PASS_LOW:
            roots.extend(self._scan(self._grid(EDGE_PASS_LOW, edge_hi, EDGE_PASS_STEP)))

        unique = []
        for parity, u, residual in sorted(roots, key=lambda root: -root[1]):
            if any(parity is q and abs(u - v) < ROOT_DEDUP for q, v, _ in unique):
                continue
            unique.append((parity, u, residual))

        states = []
        for index, (parity, u, residual) in enumerate(unique, start=1):
            energy = p.v0 - u * u * p.h2m / (p.a * p.a)
            states.append(BicState(index, parity, energy, u, residual))
        self.logger.info(
            f"V0={p.v0:g}, a={p.a:g}, h2m={p.h2m:g} (qa={p.qa:.6g}): {len(states)} BIC state(s)"
        )
        for state in states:
            self.logger.debug(
                f"  #{state.index} {state.parity.value:<4} E={state.energy:.10f} "
                f"kappa*a={state.kappa_a:.10f} residual={state.residual:.1e}"
            )
        return states

    def normalize(self, state: BicState) -> BicState:
        """Attach the closed-form L2 norm; D = 1/sqrt(norm_sq)."""
        norm_sq = norm_sq_closed_form(NormParams(state.kappa_a, self.params.qa), self.params.a)
        return state.with_norm(norm_sq)

    def count_sweep(self, a_values, scan_resolution=None):
        """(a, qa, number of BIC states) for each length scale."""
        rows = []
        for a in a_values:
            manager = SpectrumManager(self.params.with_a(a), self.logger, self.n_jobs, self.scan_resolution)
            states = manager.find_bic_spectrum(scan_resolution)
            rows.append((float(a), manager.params.qa, len(states)))
        return rows


def find_bic_spectrum(p: ModelParams, scan_resolution=1e-3, logger=None):
    return SpectrumManager(p, logger).find_bic_spectrum(scan_resolution)


def normalize(p: ModelParams, state: BicState) -> BicState:
    return SpectrumManager(p).normalize(state)
