import math
from dataclasses import dataclass, field, replace
from typing import List, Optional

from ..utils.errors import InvalidParameterError
from .params import Parity


@dataclass(frozen=True)
class BicState:
    """One bound state in the continuum."""
    index: int
    parity: Parity
    energy: float
    kappa_a: float
    residual: float
    norm_sq: Optional[float] = None

    @property
    def amplitude(self):
        """The constant D of the normalized state; 1 when no norm is attached."""
        return 1.0 / math.sqrt(self.norm_sq) if self.norm_sq else 1.0

    def with_norm(self, norm_sq):
        return replace(self, norm_sq=norm_sq)

    def as_row(self):
        return {
            'index': self.index,
            'parity': self.parity.value,
            'energy': self.energy,
            'kappa_a': self.kappa_a,
            'residual': self.residual,
            'norm_sq': self.norm_sq,
        }


@dataclass(frozen=True)
class NormParams:
    """Order r and lower limit s of the integral of J_r(t)^2 / t from s to infinity."""
    r: float
    s: float

    def __post_init__(self):
        if not (math.isfinite(self.s) and self.s > 0.0):
            raise InvalidParameterError(f"lower limit s must be positive, got {self.s!r}")
        if not math.isfinite(self.r):
            raise InvalidParameterError(f"order r must be finite, got {self.r!r}")


@dataclass(frozen=True)
class NormReport:
    """Direct quadrature of the norm integral, with the closed form when it applies."""
    r: float
    s: float
    quadrature: float
    tail: float
    closed_form: Optional[float]


@dataclass(frozen=True)
class ScatterPoint:
    energy: float
    r_prob: float
    t_prob: float
    a: Optional[float] = None
    incidence: str = 'left'
    status: str = 'ok'

    @property
    def conservation(self):
        return self.r_prob + self.t_prob

    @property
    def ok(self):
        return self.status == 'ok'

    def as_row(self):
        return {
            'energy': self.energy,
            'a': self.a,
            'R': self.r_prob,
            'T': self.t_prob,
            'R_plus_T': self.conservation,
            'status': self.status,
        }


@dataclass
class ScatterScan:
    """Scan result: successful points plus flagged failures, both in grid order."""
    points: List[ScatterPoint] = field(default_factory=list)
    failures: List[ScatterPoint] = field(default_factory=list)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, item):
        return self.points[item]

    @property
    def attempted(self):
        return len(self.points) + len(self.failures)

    @property
    def success_fraction(self):
        return len(self.points) / self.attempted if self.attempted else 1.0

    def all_rows(self, key=lambda point: (point.a if point.a is not None else 0.0, point.energy)):
        """Successful and failed points merged back into grid order."""
        return sorted(self.points + self.failures, key=key)


@dataclass(frozen=True)
class ProjectionReport:
    energy: float
    c_plus: complex
    c_minus: complex
    residual: float
    condition_number: float
    x1: float
    x2: float


@dataclass(frozen=True)
class BicCandidate:
    energy: float
    parity: Parity
    residual: float


@dataclass(frozen=True)
class EnvelopeFit:
    """Tail fit of the -|x|^nu barrier solution: envelope |x|^-b and phase |x|^c."""
    nu_exponent: float
    fitted_envelope_power: float
    fitted_phase_power: float
    fit_residual: float
    alpha: float = float('nan')
    beta: float = float('nan')
    extrema_count: int = 0
    energy: float = 0.0
    x_max: float = 0.0

    def as_row(self):
        return {
            'nu': self.nu_exponent,
            'energy': self.energy,
            'x_max': self.x_max,
            'envelope_power': self.fitted_envelope_power,
            'expected_envelope_power': self.nu_exponent / 4.0,
            'phase_power': self.fitted_phase_power,
            'wkb_phase_power': (self.nu_exponent + 2.0) / 2.0,
            'alpha': self.alpha,
            'beta': self.beta,
            'extrema': self.extrema_count,
            'fit_residual': self.fit_residual,
        }
