class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class GaugeValidityError(DomainError):
    """A gauge was requested outside its validity window or breaks an axiom."""


class InfeasibleGaugeError(ValueError):
    """No Jacobi degree up to ``k_max`` certifies the spherical-code bound."""

    def __init__(self, message: str, k_max: int | None = None):
        super().__init__(message)
        self.k_max = k_max


class NumericalError(ArithmeticError):
    """A numerical procedure produced a non-finite value or lost its bracket."""


class QuadratureError(NumericalError):
    """The log-space quadrature could not locate a peak or did not converge."""

    def __init__(self, message: str, **diagnostics):
        details = ", ".join(f"{key}={value!r}" for key, value in diagnostics.items())
        super().__init__(f"{message} ({details})" if details else message)
        self.diagnostics = diagnostics
