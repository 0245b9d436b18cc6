"""Exception hierarchy shared by all bernvar modules."""


class BernvarError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BernvarError, ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedOrderError(DomainError):
    """A moment order has no closed form available."""


class SingularRepresentationError(DomainError):
    """The requested formula divides by x(1-x) and x is an endpoint."""


class NonFiniteValueError(BernvarError, ArithmeticError):
    """A sampled function value is NaN or infinite.

    ``node`` holds the abscissa where the value was produced.
    """

    def __init__(self, message, node):
        super().__init__(message)
        self.node = node


class IntegrationError(NonFiniteValueError):
    """Quadrature hit a non-finite integrand value."""


class ConvergenceError(BernvarError):
    """Adaptive refinement ran out of budget.

    The best available estimate and the gap between the last two
    refinements are kept on the exception.
    """

    def __init__(self, message, best, gap):
        super().__init__(message)
        self.best = best
        self.gap = gap


class UndefinedRatioError(BernvarError, ZeroDivisionError):
    """A ratio was requested whose denominator vanishes."""
