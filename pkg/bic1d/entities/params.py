import math
from dataclasses import dataclass
from enum import Enum

from ..utils.errors import InvalidParameterError


class Parity(Enum):
    EVEN = "Even"
    ODD = "Odd"

    @classmethod
    def parse(cls, value):
        """Accept a Parity, 'even'/'odd' in any case, or 'E'/'O'."""
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        if text in ('even', 'e'):
            return cls.EVEN
        if text in ('odd', 'o'):
            return cls.ODD
        raise InvalidParameterError(f"unknown parity {value!r}")

    @property
    def short(self):
        return self.value[0]


class OrderKind(Enum):
    REAL = "RealOrder"
    IMAGINARY = "ImaginaryOrder"


@dataclass(frozen=True)
class OrderValue:
    """Bessel order kappa*a: real below the barrier top, imaginary above it."""
    kind: OrderKind
    magnitude: float

    @property
    def is_real(self):
        return self.kind is OrderKind.REAL

    def as_complex(self):
        return complex(self.magnitude, 0.0) if self.is_real else complex(0.0, self.magnitude)


@dataclass(frozen=True)
class ModelParams:
    """Barrier scale v0, length a and hbar^2/2m; q = sqrt(v0 / h2m)."""
    v0: float
    a: float
    h2m: float
    q: float
    q2: float

    @property
    def qa(self):
        return self.q * self.a

    def with_a(self, a):
        return make_params(self.v0, a, self.h2m)

    def as_dict(self):
        return {'v0': self.v0, 'a': self.a, 'h2m': self.h2m}


def make_params(v0, a, h2m=1.0) -> ModelParams:
    """Validated ModelParams; every parameter must be a finite positive number."""
    values = {}
    for name, value in (('v0', v0), ('a', a), ('h2m', h2m)):
        try:
            value = float(value)
        except (TypeError, ValueError) as exc:
            raise InvalidParameterError(f"{name} must be a number, got {value!r}") from exc
        if not math.isfinite(value) or value <= 0.0:
            raise InvalidParameterError(f"{name} must be positive and finite, got {value!r}")
        values[name] = value
    q2 = values['v0'] / values['h2m']
    return ModelParams(values['v0'], values['a'], values['h2m'], math.sqrt(q2), q2)
