"""Exception types raised by the solver library.

Every error that crosses a module boundary is one of these, so callers
(including the command-line front end) can map failures to exit codes
without string matching.
"""


class KgwellError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(KgwellError, ValueError):
    """An input value violates a documented precondition."""


class NotABoundStateError(KgwellError, ValueError):
    """Trial energy lies outside the bound-state window |e_bar| < m_bar."""


class DomainError(KgwellError, ValueError):
    """Argument outside the validated range of a special-function kernel."""


class AccuracyError(KgwellError):
    """A numerical kernel could not reach its accuracy target.

    Carries the partial value and an error estimate when one is
    available, so callers can decide whether the partial result is
    still usable.
    """

    def __init__(self, message, partial=None, estimate=None):
        super().__init__(message)
        self.partial = partial
        self.estimate = estimate


class InternalConsistencyError(KgwellError):
    """An exact internal identity failed; signals a bug, not bad input."""


class DegenerateConfigurationError(KgwellError):
    """The parity basis collapsed at the matching point."""


class DegenerateStateError(KgwellError):
    """A wavefunction with (numerically) zero norm cannot be normalized."""


class ConfigError(KgwellError, ValueError):
    """Invalid solver configuration value."""
