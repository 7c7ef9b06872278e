"""Exception types raised by ssbath."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class ValidityError(ArithmeticError):
    """A first-order (q - 1) result left its range of validity.

    Raised instead of clamping so that expansion breakdown stays visible.
    """


class ConfigurationError(ValueError):
    """Numerical settings (step size, truncation) are inadequate."""


class ConvergenceError(ArithmeticError):
    """Quadrature or root finding did not converge.

    Attributes
    ----------
    estimate : float
        Best value reached.
    bound : float
        Error bound reported for ``estimate``.
    """

    def __init__(self, message, estimate=float("nan"), bound=float("inf")):
        super().__init__(f"{message} (estimate={estimate!r}, bound={bound!r})")
        self.estimate = estimate
        self.bound = bound
