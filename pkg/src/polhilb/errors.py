"""Exception types shared across the toolkit."""


class PolhilbError(Exception):
    """Base class for all toolkit errors."""


class MalformedInputError(PolhilbError, ValueError):
    """Input data does not describe a valid object (bad index, bad shape, ...)."""


class PreconditionError(PolhilbError, ValueError):
    """An operation was called on an object outside its domain."""


class StructuralError(PolhilbError):
    """An ideal lacks the structure an operation relies on."""
