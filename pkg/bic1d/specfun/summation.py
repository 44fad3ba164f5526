"""Compensated (Neumaier) accumulation for the series kernels."""


class _RealAccumulator:
    __slots__ = ("total", "compensation")

    def __init__(self):
        self.total = 0.0
        self.compensation = 0.0

    def add(self, term):
        t = self.total + term
        if abs(self.total) >= abs(term):
            self.compensation += (self.total - t) + term
        else:
            self.compensation += (term - t) + self.total
        self.total = t

    @property
    def value(self):
        return self.total + self.compensation


class CompensatedSum:
    """Running sum of real or complex terms with error-free transformations.

    Also tracks the largest partial-sum magnitude and the largest term seen,
    which the series kernels use for stopping and for cancellation estimates.
    """

    def __init__(self):
        self._re = _RealAccumulator()
        self._im = _RealAccumulator()
        self.is_complex = False
        self.max_partial = 0.0
        self.max_term = 0.0
        self.count = 0

    def add(self, term):
        if isinstance(term, complex):
            self.is_complex = True
            self._re.add(term.real)
            self._im.add(term.imag)
        else:
            self._re.add(term)
        self.count += 1
        self.max_term = max(self.max_term, abs(term))
        self.max_partial = max(self.max_partial, abs(self.value))
        return self

    @property
    def value(self):
        if self.is_complex:
            return complex(self._re.value, self._im.value)
        return self._re.value
