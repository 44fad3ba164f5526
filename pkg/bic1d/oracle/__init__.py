"""Independent numerical checks: ODE integration, projection, quadrature, currents."""

from .current import hankel_wave_table, probability_current, qes_state_table
from .numerov import anchor_scale, integrate_parity_ode, numerov_solve, numerov_weighted_residual
from .power_barrier import default_x_max, power_barrier_scan, power_barrier_sweep
from .projection import (
    ProjectionScanner,
    bic_scan_by_projection,
    orders_energy_grid,
    project_onto_basis,
    project_with_redraw,
    projection_residual,
)
from .quadrature import quadrature_norm
from .travelling_wave import rt_by_integration

__all__ = [
    'anchor_scale',
    'bic_scan_by_projection',
    'default_x_max',
    'hankel_wave_table',
    'integrate_parity_ode',
    'numerov_solve',
    'numerov_weighted_residual',
    'orders_energy_grid',
    'power_barrier_scan',
    'power_barrier_sweep',
    'probability_current',
    'project_onto_basis',
    'project_with_redraw',
    'projection_residual',
    'ProjectionScanner',
    'qes_state_table',
    'quadrature_norm',
    'rt_by_integration',
]
