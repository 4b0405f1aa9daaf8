"""Exception hierarchy shared by all affpi0 modules."""


class AffError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(AffError):
    """Malformed polynomial text or input file."""


class RingMismatchError(AffError):
    """Operands live in incompatible rings (arity, variables or field)."""


class UnsupportedFieldError(AffError):
    """Operation requires a field of a different kind (e.g. points over Q)."""


class ResourceLimitError(AffError):
    """A configured resource guard (basis size, degree, term count) tripped."""


class MorphismError(AffError):
    """Candidate morphism violates a relation of its source presentation."""


class TruncationError(AffError):
    """Truncation too small to support the requested construction."""


class HypothesisError(AffError):
    """A stated hypothesis of a check is violated by the inputs."""


class PropertyViolationError(AffError):
    """A verified mathematical property failed; carries a witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
