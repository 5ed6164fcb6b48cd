class GnlError(Exception):
    """Base class for errors raised by this package."""


class InputError(GnlError, ValueError):
    """Malformed input: bad shapes, unknown labels, invalid JSON content."""


class CapacityError(GnlError):
    """A computation would exceed a configured size limit."""


class NotNilpotentError(GnlError):
    """The lower central series did not reach zero."""
