"""Exception types raised by isograd."""


class IsogradError(Exception):
    """Base class for all library errors."""


class SymmetryViolation(IsogradError, ValueError):
    """Raw tensor data breaks a required index symmetry beyond tolerance."""


class InvariantViolation(IsogradError, ValueError):
    """A value does not satisfy the invariants of its type."""


class OrderBoundError(IsogradError, ValueError):
    """Requested tensor order exceeds the supported bound."""


class FormatError(IsogradError, ValueError):
    """Malformed serialized input."""


class ClassificationFailure(IsogradError, RuntimeError):
    """An operator product matched no generator of the algebra."""
