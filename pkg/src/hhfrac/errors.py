"""Exception types shared across the package."""


class HHFracError(Exception):
    """Base class for all library errors."""


class DomainError(HHFracError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class DegenerateIntervalError(DomainError):
    """The interval is too narrow for the closed-form constants to be meaningful."""


class ConvergenceError(HHFracError, ArithmeticError):
    """An iterative evaluation did not reach its tolerance within budget.

    ``estimate`` carries the best error estimate that was achieved.
    """

    def __init__(self, message: str, estimate: float, value: float | None = None):
        super().__init__(f"{message} (achieved error estimate {estimate:.3e})")
        self.estimate = estimate
        self.value = value


class QuadratureError(ConvergenceError):
    """Adaptive quadrature ran out of subdivisions before meeting tolerance."""
