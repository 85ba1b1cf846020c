class LatticeError(Exception):
    """Base class for every error raised by the lattice toolkit."""


class DimensionMismatchError(LatticeError):
    pass


class CoordinateOverflowError(LatticeError, OverflowError):
    pass


class DegenerateHullError(LatticeError):
    """Input points span less than the ambient dimension."""

    def __init__(self, affine_dim, d):
        self.affine_dim = affine_dim
        self.d = d
        super().__init__(f'points span an affine subspace of dimension {affine_dim} in dimension {d}')


class BoxContainmentError(LatticeError):
    pass


class InconsistentFacetsError(LatticeError):
    pass


class DisconnectedGraphError(LatticeError):
    pass


class EmptyFaceError(LatticeError):
    pass


class ZeroFunctionalError(LatticeError):
    pass


class InvalidParameterError(LatticeError, ValueError):
    pass


class PreconditionError(LatticeError):
    pass


class BoundsMismatchError(LatticeError):
    pass


class BudgetExceededError(LatticeError):
    """A search or enumeration ran out of its node, time or size budget."""

    def __init__(self, message, explored=None):
        self.explored = explored
        super().__init__(message)


class FormatError(LatticeError):
    """Malformed text input; `line` is 1-based, None when the whole input is at fault."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f'line {line}: {message}' if line is not None else message)
