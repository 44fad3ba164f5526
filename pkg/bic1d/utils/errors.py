"""Exception hierarchy shared by every bic1d module."""


class Bic1dError(Exception):
    """Base class for all bic1d errors."""

    def __init__(self, message, abs_err=None):
        super().__init__(message)
        self.abs_err = abs_err


class InvalidParameterError(Bic1dError, ValueError):
    """An argument violates a documented precondition."""


class DomainError(InvalidParameterError):
    """Argument outside the domain of a special function (z <= 0, poles)."""


class NearIntegerOrderError(InvalidParameterError):
    """Order too close to an integer for the reflection formula; nudge nu."""

    def __init__(self, nu, band):
        super().__init__(
            f"order {nu!r} lies within {band:g} of an integer; "
            f"nudge the order (e.g. by 1e-6) before evaluating Y or Hankel functions"
        )
        self.nu = nu


class IntegerOrderError(InvalidParameterError):
    """kappa*a is an integer: the degenerate continuum pair collapses to zero."""


class NotAnEigenvalueError(Bic1dError, ValueError):
    """Energy does not satisfy the requested quantization condition."""

    def __init__(self, energy, parity, residual):
        super().__init__(
            f"E={energy!r} is not a {parity.value} BIC eigenvalue "
            f"(condition residual {residual:.3e})"
        )
        self.energy = energy
        self.parity = parity
        self.residual = residual


class NumericalError(Bic1dError, ArithmeticError):
    """Base class for numerical failures."""


class AccuracyLossError(NumericalError):
    """Estimated absolute error exceeds the requested tolerance."""


class ConvergenceError(NumericalError):
    """A series, continued fraction or iterative refinement did not converge."""


class GammaOverflowError(NumericalError, OverflowError):
    """Gamma function beyond the double-precision range."""


class PotentialOverflowError(NumericalError, OverflowError):
    """exp(2|x|/a) overflows."""


class IllConditionedError(NumericalError):
    """A small linear system is numerically singular."""

    def __init__(self, message, determinant=None):
        super().__init__(message)
        self.determinant = determinant


class StepUnderflowError(NumericalError):
    """Step refinement would exceed the integration point budget."""


class InsufficientExtremaError(NumericalError):
    """Too few extrema of the solution to fit an envelope."""

    def __init__(self, found, required):
        super().__init__(f"found {found} extrema, need at least {required}")
        self.found = found
        self.required = required
