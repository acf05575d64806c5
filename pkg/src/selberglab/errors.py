"""Exception types shared across the package."""


class SelbergLabError(Exception):
    pass


class ArityError(SelbergLabError, ValueError):
    """Operands live in polynomial rings with different variable counts."""


class TermCeilingError(SelbergLabError, MemoryError):
    """An expansion would exceed the configured number of terms."""


class DomainError(SelbergLabError, ValueError):
    """Parameters fall outside the region where a closed form is valid."""


class GammaPoleError(SelbergLabError, ValueError):
    """A Gamma function in a numerator was asked for at a pole."""


class NonGenericParameterError(SelbergLabError, ValueError):
    """Two eigenvalues of the triangular eigensystem coincide."""


class AccuracyError(SelbergLabError, RuntimeError):
    """A numerical routine could not reach its requested tolerance.

    The best available estimate travels along as ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConfigError(SelbergLabError, ValueError):
    pass
