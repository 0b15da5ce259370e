"""Semantic exceptions shared across the package."""


class RhygarchError(Exception):
    """Base class for package errors."""


class DomainError(RhygarchError, ValueError):
    """An argument lies outside its mathematical domain."""


class DataError(RhygarchError, ValueError):
    """Input data violate the series contract (shape, sign, parse)."""


class NonStationaryError(RhygarchError, RuntimeError):
    """Parameters fail the first-moment stationarity condition.

    Carries the diagnostic report so callers can show why the refusal
    happened.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
