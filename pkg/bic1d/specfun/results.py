from dataclasses import dataclass
from enum import Enum
from typing import Union

Number = Union[float, complex]


class Regime(Enum):
    """Evaluation branch taken by a special-function kernel."""
    SERIES = "Series"
    CONTINUED_FRACTION = "ContinuedFraction"
    ASYMPTOTIC = "Asymptotic"
    REFLECTION = "Reflection"


@dataclass(frozen=True)
class EvalResult:
    """A special-function value with its absolute error estimate."""
    value: Number
    abs_err: float
    regime: Regime

    def __post_init__(self):
        if self.abs_err < 0:
            raise ValueError("abs_err must be non-negative")

    def __float__(self):
        return float(self.value.real if isinstance(self.value, complex) else self.value)

    def __complex__(self):
        return complex(self.value)
