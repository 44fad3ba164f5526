"""Command implementations: each takes a RunConfig and returns a ResultDocument."""

import math

import numpy as np
from scipy.interpolate import CubicSpline

from .documents import Provenance, ResultDocument
from .entities.params import Parity
from .entities.wavefunction import Source, WavefunctionTable
from .managers.scattering_manager import ScatteringManager
from .managers.spectrum_manager import SpectrumManager, condition
from .mechanics.potential import order_of_energy
from .mechanics.wavefunctions import bic_wavefunction, closed_form_table, symmetric_grid
from .oracle.current import probability_current, qes_state_table
from .oracle.numerov import anchor_scale, integrate_parity_ode
from .oracle.power_barrier import power_barrier_sweep
from .oracle.projection import ProjectionScanner, orders_energy_grid
from .oracle.quadrature import quadrature_norm
from .specfun import bessel_j, bessel_j_prime, bessel_y, gamma, hyp2f3
from .stats import ScanStatistics
from .utils.constants import SCATTER_SUCCESS_FRACTION
from .utils.errors import Bic1dError, InvalidParameterError, NotAnEigenvalueError
from .utils.logger import silent_logger

SPECTRUM_COLUMNS = ['index', 'parity', 'energy', 'kappa_a', 'residual', 'norm_sq', 'oracle_residual']
SCATTER_COLUMNS = ['energy', 'a', 'R', 'T', 'R_plus_T', 'status']
POWER_COLUMNS = ['nu', 'energy', 'x_max', 'envelope_power', 'expected_envelope_power', 'phase_power',
                 'wkb_phase_power', 'alpha', 'beta', 'extrema', 'fit_residual', 'status']
VERIFY_COLUMNS = ['check', 'value', 'tolerance', 'passed']
EXIT_NUMERICAL = 3
ODE_ANCHOR = 0.1  # in units of a


def cmd_spectrum(cfg, logger=None):
    logger = logger or silent_logger()
    opts = cfg.options
    p = cfg.params
    manager = SpectrumManager(p, logger, scan_resolution=opts.get('scan_resolution', 1e-3))

    curve = int(opts.get('curve') or 0)
    if curve > 0:
        energies = np.linspace(0.0, p.v0, curve + 2)[1:-1]
        records = manager.condition_curve(energies)
        return ResultDocument.from_records(
            'spectrum', cfg.echo(), records,
            columns=['energy', 'kappa_a', 'even_condition', 'odd_condition'],
        )

    states = [manager.normalize(state) for state in manager.find_bic_spectrum()]
    records = [dict(state.as_row(), oracle_residual=None) for state in states]
    provenance = Provenance.CLOSED_FORM
    summary = {'count': len(states)}
    if opts.get('verify'):
        provenance = Provenance.BOTH
        scanner = ProjectionScanner(p, logger, points_per_wavelength=opts.get('verify_points_per_wavelength', 200))
        for record, state in zip(records, states):
            try:
                record['oracle_residual'] = scanner.project(state.energy, state.parity).residual
            except Bic1dError as exc:
                logger.warning(f"oracle projection failed for state #{state.index}: {exc}")
        candidates = scanner.scan(orders_energy_grid(p))
        summary['oracle_count'] = len(candidates)
        if len(candidates) == len(states):
            summary['oracle_max_energy_difference'] = max(
                (abs(c.energy - s.energy) for c, s in zip(candidates, states)), default=0.0
            )
    return ResultDocument.from_records('spectrum', cfg.echo(), records, columns=SPECTRUM_COLUMNS,
                                       provenance=provenance, summary=summary)


def snap_to_eigenvalue(p, energy, parity, tolerance, logger=None):
    """Nearest spectrum state of ``parity`` within ``tolerance`` of ``energy``."""
    logger = logger or silent_logger()
    states = [s for s in SpectrumManager(p, logger).find_bic_spectrum() if s.parity is parity]
    nearest = min(states, key=lambda s: abs(s.energy - energy), default=None)
    if nearest is None or abs(nearest.energy - energy) > tolerance:
        order = order_of_energy(p, energy)
        residual = math.inf
        if order.is_real and 0.0 < order.magnitude < p.qa:
            residual = abs(condition(p, parity, order.magnitude))
        raise NotAnEigenvalueError(energy, parity, residual)
    if nearest.energy != energy:
        logger.info(f"E={energy!r} snapped to the {parity.value} eigenvalue {nearest.energy!r}")
    return nearest


def _ode_table(cfg, energy, parity, xs, normalize):
    opts = cfg.options
    p = cfg.params
    extent = max(float(np.max(np.abs(xs))), 5.0 * p.a) if normalize else float(np.max(np.abs(xs)))
    table = integrate_parity_ode(p, energy, parity, extent, opts.get('base_step', 1e-2),
                                 opts.get('points_per_wavelength', 40))
    scale = 1.0 / math.sqrt(quadrature_norm(p, table)) if normalize else 1.0
    values = CubicSpline(table.xs, table.values)(xs) * scale
    return WavefunctionTable(xs, values, energy, parity, Source.ODE_INTEGRATION)


def cmd_wavefunction(cfg, logger=None):
    logger = logger or silent_logger()
    opts = cfg.options
    p = cfg.params
    energy = float(opts['energy'])
    parity = Parity.parse(opts.get('parity', 'even'))
    source = opts.get('source', 'closed-form')
    normalize = bool(opts.get('normalize'))
    xs = symmetric_grid(float(opts.get('x_max', 4.0)), int(opts.get('samples', 801)))

    if source == 'closed-form':
        state = snap_to_eigenvalue(p, energy, parity, opts.get('snap_tolerance', 5e-3), logger)
        amplitude = 1.0
        if normalize:
            state = SpectrumManager(p, logger).normalize(state)
            amplitude = state.amplitude
        energy = state.energy
        table = closed_form_table(p, energy, xs, 'bic', parity, amplitude)
        provenance = Provenance.CLOSED_FORM
    elif source == 'ode':
        table = _ode_table(cfg, energy, parity, xs, normalize)
        provenance = Provenance.ORACLE
    else:
        raise InvalidParameterError(f"source must be 'closed-form' or 'ode', got {source!r}")

    records = [{'x': x, 'psi': psi, 'psi_squared': psi * psi} for x, psi in zip(table.xs, table.values)]
    summary = {'energy': energy, 'parity': parity.value, 'source': table.source.value, 'normalized': normalize}
    return ResultDocument.from_records('wavefunction', cfg.echo(), records, columns=['x', 'psi', 'psi_squared'],
                                       provenance=provenance, summary=summary)


def cmd_scatter(cfg, logger=None):
    logger = logger or silent_logger()
    opts = cfg.options
    manager = ScatteringManager(cfg.params, logger)
    incidence = opts.get('incidence', 'left')
    sweep = opts.get('a_sweep')
    if sweep:
        a_min, a_max, steps = float(sweep[0]), float(sweep[1]), int(sweep[2])
        if not 0.0 < a_min < a_max or steps < 2:
            raise InvalidParameterError(f"a-sweep needs 0 < A_MIN < A_MAX and STEPS >= 2, got {sweep!r}")
        scan = manager.rt_a_sweep(float(opts['energy']), np.linspace(a_min, a_max, steps), incidence)
    else:
        scan = manager.rt_scan(float(opts['e_min']), float(opts['e_max']), int(opts['steps']), incidence)

    stats = ScanStatistics()
    stats.record_scan(scan)
    records = [point.as_row() for point in scan.all_rows()]
    document = ResultDocument.from_records('scatter', cfg.echo(), records, columns=SCATTER_COLUMNS,
                                           summary=stats.get_summary())
    if stats.success_fraction < SCATTER_SUCCESS_FRACTION:
        logger.error(f"only {stats.success_fraction:.0%} of scattering points succeeded")
        document.exit_code = EXIT_NUMERICAL
    return document


def cmd_power_scan(cfg, logger=None):
    logger = logger or silent_logger()
    opts = cfg.options
    nu_values = [float(nu) for nu in opts.get('nu', [])]
    if not nu_values:
        raise InvalidParameterError("power-scan needs at least one --nu value")
    energy = float(opts.get('energy', 1.0))
    records = []
    for nu, fit, error in power_barrier_sweep(nu_values, energy, opts.get('x_max'), logger):
        if fit is None:
            records.append({'nu': nu, 'energy': energy, 'status': type(error).__name__})
        else:
            records.append(dict(fit.as_row(), status='ok'))
    document = ResultDocument.from_records('power-scan', cfg.echo(), records, columns=POWER_COLUMNS,
                                           provenance=Provenance.ORACLE)
    if all(record['status'] != 'ok' for record in records):
        document.exit_code = EXIT_NUMERICAL
    return document


def _check(records, name, value, tolerance, passed=None):
    passed = value <= tolerance if passed is None else passed
    records.append({'check': name, 'value': value, 'tolerance': tolerance, 'passed': bool(passed)})


def ode_closed_form_error(p, table, x_max):
    """max |psi_ode - psi_closed| / max |psi_closed| over 0 <= x <= x_max."""
    window = table.restricted(0.0, x_max)
    reference = closed_form_table(p, table.energy, window.xs, 'bic', table.parity)
    scale = np.max(np.abs(reference.values))
    return float(np.max(np.abs(window.values - reference.values)) / scale)


def cmd_verify(cfg, logger=None):
    """Concordance checks between the closed forms and the oracle."""
    logger = logger or silent_logger()
    opts = cfg.options
    p = cfg.params
    records = []
    spectrum = SpectrumManager(p, logger)
    states = spectrum.find_bic_spectrum()
    parities = [s.parity for s in states]

    _check(records, 'spectrum_max_residual', max((s.residual for s in states), default=0.0), 1e-8)
    alternating = all(parity is (Parity.EVEN if i % 2 == 0 else Parity.ODD) for i, parity in enumerate(parities))
    _check(records, 'spectrum_parity_alternation', float(len(states)), 0.0, passed=alternating)

    scanner = ProjectionScanner(p, logger, points_per_wavelength=opts.get('projection_points_per_wavelength', 200))
    residuals = [scanner.project(s.energy, s.parity).residual for s in states]
    _check(records, 'projection_max_residual', max(residuals, default=0.0), 1e-4)
    candidates = scanner.scan(orders_energy_grid(p))
    same = [c.parity for c in candidates] == parities
    difference = max((abs(c.energy - s.energy) for c, s in zip(candidates, states)), default=0.0) if same else math.inf
    _check(records, 'projection_scan_max_energy_difference', difference, 1e-4)

    ppw = opts.get('ode_points_per_wavelength', 400)
    extent = opts.get('norm_table_extent', 5.0) * p.a
    norm_error = ode_error = 0.0
    for state in states:
        state = spectrum.normalize(state)
        table = integrate_parity_ode(p, state.energy, state.parity, extent, 1e-2, ppw)
        table = anchor_scale(table, lambda x, s=state: bic_wavefunction(p, s.energy, s.parity, x), ODE_ANCHOR * p.a)
        norm_error = max(norm_error, abs(quadrature_norm(p, table, logger) / state.norm_sq - 1.0))
        ode_error = max(ode_error, ode_closed_form_error(p, table, 3.0 * p.a))
    _check(records, 'norm_quadrature_max_relative_error', norm_error, 1e-6)
    _check(records, 'ode_closed_form_max_relative_error', ode_error, 1e-6)

    scan = ScatteringManager(p, logger).rt_scan(0.01 * p.v0, 0.99 * p.v0, 50)
    conservation = max((abs(point.conservation - 1.0) for point in scan), default=0.0)
    _check(records, 'scatter_max_conservation_error', conservation, 1e-8, passed=conservation <= 1e-8
           and scan.success_fraction >= SCATTER_SUCCESS_FRACTION)
    current = probability_current(qes_state_table())
    _check(records, 'qes_current_variance', float(np.var(current)), 1e-10,
           passed=np.var(current) < 1e-10 and abs(np.mean(current) - 0.5) < 1e-6)

    passed = all(record['passed'] for record in records)
    for record in records:
        level = "INFO" if record['passed'] else "WARNING"
        logger.log(f"{record['check']}: {record['value']:.3e} (tolerance {record['tolerance']:.0e})", level)
    document = ResultDocument.from_records('verify', cfg.echo(), records, columns=VERIFY_COLUMNS,
                                           provenance=Provenance.BOTH, summary={'passed': passed})
    if not passed:
        document.exit_code = EXIT_NUMERICAL
    return document


SPECFUN_FUNCTIONS = {
    'j': lambda nu, z: bessel_j(nu, z),
    'jprime': lambda nu, z: bessel_j_prime(nu, z),
    'y': lambda nu, z: bessel_y(nu, z),
    'gamma': lambda nu, z: gamma(z),
    'norm-series': lambda nu, z: hyp2f3(nu, nu + 0.5, nu + 1.0, nu + 1.0, 2.0 * nu + 1.0, -z * z),
}


def cmd_specfun_eval(cfg, logger=None):
    """Single special-function evaluation, for debugging the kernel."""
    opts = cfg.options
    name = opts.get('function', 'j')
    if name not in SPECFUN_FUNCTIONS:
        raise InvalidParameterError(f"function must be one of {sorted(SPECFUN_FUNCTIONS)}, got {name!r}")
    nu, z = float(opts.get('nu', 0.0)), float(opts['z'])
    result = SPECFUN_FUNCTIONS[name](nu, z)
    record = {'function': name, 'nu': nu, 'z': z, 'value': float(result.value),
              'abs_err': result.abs_err, 'regime': result.regime.value}
    return ResultDocument.from_records('specfun-eval', cfg.echo(), [record])


COMMANDS = {
    'spectrum': cmd_spectrum,
    'wavefunction': cmd_wavefunction,
    'scatter': cmd_scatter,
    'power-scan': cmd_power_scan,
    'verify': cmd_verify,
    'specfun-eval': cmd_specfun_eval,
}
