"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """Argument lies outside the domain of the function (e.g. |z| >= 1)."""


class PathError(ValueError):
    """Requested evaluation path is not available at this argument."""


class NonTerminatingSeriesError(ValueError):
    """Hypergeometric parameters do not produce a finite sum."""


class DegreeOverflowError(OverflowError):
    """Polynomial degree exceeds the supported bound."""


class CutoffError(RuntimeError):
    """A truncation that meets the requested tolerance would exceed the hard cap."""


class QuadratureError(RuntimeError):
    """Node construction or integrand evaluation failed."""


class MetadataMismatchError(ValueError):
    """Operator matrices built on different bases were combined."""


class ObservableSyntaxError(ValueError):
    """Malformed observable expression.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ObservableEvaluationError(ValueError):
    """Observable could not be evaluated (e.g. zero denominator on a node)."""


class QuadratureAccuracyWarning(UserWarning):
    """Quadrature rule is not exact for the integrand, or failed to saturate."""


class TruncationWarning(UserWarning):
    """Truncated coherent-state vector leaves more tail mass than requested."""
