"""Exception hierarchy shared by all modules."""


class CausalTopError(Exception):
    """Base class for library errors."""


class ValidationError(CausalTopError, ValueError):
    """Input violates a structural precondition (bad subset, bad partition...)."""


class ResourceError(CausalTopError):
    """A size guard was exceeded."""


class DimensionError(ValidationError):
    pass


class InvalidDiamondError(ValidationError):
    """Raised when a diamond is requested for p, q with p not causally below q."""


class UndefinedPrecedenceError(CausalTopError, ValueError):
    """Precedence was queried on an empty region (the lattice bottom)."""


class CuttingError(CausalTopError):
    """No element satisfies the cutting axiom for the given pair.

    ``witness`` holds the offending ``(a, b)`` pair.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SeparationError(ValidationError):
    pass
