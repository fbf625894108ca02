"""Exception hierarchy shared by every gsm subpackage."""


class GsmError(Exception):
    """Base class for all estimation errors."""

    pass


class DomainError(GsmError, ValueError):
    """Raised when data or parameters fall outside the model domain."""

    pass


class NormalizabilityError(DomainError):
    """Raised when parameters do not define a normalizable density."""

    pass


class NumericError(GsmError):
    """Raised when a numerical routine fails."""

    pass


class SingularSystemError(NumericError):
    """Raised when a linear system or loss block is singular or indefinite."""

    def __init__(self, message: str, block: int = -1) -> None:
        super().__init__(message)
        self.block = block


class QuadratureError(NumericError):
    """Raised when a quadrature diverges or fails to reach tolerance."""

    pass


class SamplerError(NumericError):
    """Raised when a Gibbs conditional cannot be sampled."""

    pass
