"""Exception hierarchy shared by all onecut modules."""


class OneCutError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(OneCutError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ConvergenceError(OneCutError):
    """An iterative solver exhausted its iteration budget."""


class NotOneCutError(OneCutError):
    """The potential failed the one-cut regularity checks; downstream
    quantities are not defined for it."""


class QuadratureError(OneCutError):
    """A quadrature failed its internal self-consistency check."""


class SeriesError(OneCutError):
    """Invalid power-series operation (e.g. division by a series with
    vanishing leading coefficient)."""


class CancellationError(OneCutError):
    """An algebraic cancellation that must hold exactly failed beyond
    tolerance; indicates an implementation bug upstream."""


class PrecisionError(OneCutError):
    """The requested accuracy cannot be reached within the configured
    precision / discretization budget."""


class IllConditionedError(OneCutError):
    """A least-squares system is too ill-conditioned to resolve the
    requested coefficients."""
