from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..utils.errors import InvalidParameterError
from .params import Parity


class Source(Enum):
    CLOSED_FORM = "ClosedForm"
    ODE_INTEGRATION = "OdeIntegration"


@dataclass(frozen=True, eq=False)
class WavefunctionTable:
    """Sampled psi(x) with the energy, parity and origin of the samples."""
    xs: np.ndarray
    values: np.ndarray
    energy: float
    parity: Optional[Parity]
    source: Source

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        values = np.asarray(self.values)
        if values.dtype.kind not in 'fc':
            values = values.astype(float)
        if xs.ndim != 1 or values.shape != xs.shape:
            raise InvalidParameterError("xs and values must be 1-D arrays of equal length")
        if xs.size > 1 and not np.all(np.diff(xs) > 0):
            raise InvalidParameterError("xs must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError("wavefunction values must be finite")
        object.__setattr__(self, 'xs', xs)
        object.__setattr__(self, 'values', values)

    def __len__(self):
        return self.xs.size

    @property
    def is_complex(self):
        return np.iscomplexobj(self.values)

    @property
    def x_min(self):
        return float(self.xs[0])

    @property
    def x_max(self):
        return float(self.xs[-1])

    def nearest_index(self, x):
        return int(np.argmin(np.abs(self.xs - x)))

    def scaled(self, factor):
        return WavefunctionTable(self.xs, self.values * factor, self.energy, self.parity, self.source)

    def restricted(self, x_lo, x_hi):
        """Samples with x_lo <= x <= x_hi."""
        mask = (self.xs >= x_lo) & (self.xs <= x_hi)
        return WavefunctionTable(self.xs[mask], self.values[mask], self.energy, self.parity, self.source)

    def is_uniform(self, rtol=1e-9):
        if self.xs.size < 3:
            return True
        steps = np.diff(self.xs)
        return bool(np.allclose(steps, steps[0], rtol=rtol, atol=0.0))
