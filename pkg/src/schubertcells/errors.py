"""Exception types shared across the package."""


class SchubertError(Exception):
    """Base class for all domain errors raised by this package."""


class FieldMismatchError(SchubertError):
    """Operands live over different ground fields."""


class ShapeMismatchError(SchubertError):
    """Vector lengths / matrix shapes / symbol types are incompatible."""


class ToleranceError(SchubertError):
    """A numerical decision (rank, pivot, cross-check) fell inside the
    ambiguity band around the tolerance; refusing to guess."""


class CoherenceError(SchubertError):
    """A tower of elementary symbols does not factor (image containment
    between consecutive levels fails)."""
