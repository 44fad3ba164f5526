"""Bound states in the continuum of V(x) = -V0 [exp(2|x|/a) - 1]."""

from .entities.params import ModelParams, OrderKind, OrderValue, Parity, make_params
from .entities.states import BicState, EnvelopeFit, NormParams, ScatterPoint, ScatterScan
from .entities.wavefunction import Source, WavefunctionTable

from .managers.spectrum_manager import SpectrumManager, find_bic_spectrum, normalize
from .managers.scattering_manager import ScatteringManager, rt_coefficients, rt_scan

from .mechanics.potential import energy_of_order, order_of_energy, potential
from .mechanics.wavefunctions import bic_wavefunction, check_eigenvalue, continuum_state, psi_pm

from .utils.errors import *

__version__ = "1.0.0"

__all__ = [
    'ModelParams',
    'OrderKind',
    'OrderValue',
    'Parity',
    'make_params',
    'BicState',
    'EnvelopeFit',
    'NormParams',
    'ScatterPoint',
    'ScatterScan',
    'Source',
    'WavefunctionTable',
    'SpectrumManager',
    'ScatteringManager',
    'find_bic_spectrum',
    'normalize',
    'rt_coefficients',
    'rt_scan',
    'potential',
    'order_of_energy',
    'energy_of_order',
    'psi_pm',
    'continuum_state',
    'check_eigenvalue',
    'bic_wavefunction',
]
