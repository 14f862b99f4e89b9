"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when operands do not satisfy an operation's preconditions."""


class RealnessError(InvalidInputError):
    """Raised when a field flagged as real loses Hermitian symmetry."""


class WeightOverflowError(ArithmeticError):
    """Raised when a Fourier weight would overflow double precision.

    Carries the offending wavenumber so the caller can see which mode
    tripped the gate.
    """

    def __init__(self, message: str, xi: float | None = None):
        super().__init__(message)
        self.xi = xi


class SigmaGateError(InvalidInputError):
    """Raised when sigma exceeds the grid's safe weighting bound."""


class CflViolationError(RuntimeError):
    """Raised when the nonlinear CFL condition fails during a run."""


class BlowUpError(RuntimeError):
    """Raised when the solution develops NaN/Inf coefficients.

    ``time`` is the simulation time at which the failure was detected and
    ``records`` holds any observer output collected before the failure.
    """

    def __init__(self, message: str, time: float, records=None):
        super().__init__(message)
        self.time = time
        self.records = records
