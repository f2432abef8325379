"""Exception hierarchy shared by every module in the package."""


class DqkinError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DqkinError):
    """Malformed textual input (scalar literals, JSON payloads, CLI args)."""


class ExactnessError(DqkinError):
    """An exact-only operation received inexact (float) data."""


class GeometryError(DqkinError):
    """Input violates a geometric precondition of the requested operation."""
