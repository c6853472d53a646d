"""Exception types shared across the package.

Every error raised for bad input derives from :class:`ZetaError`, which lets
the command line map them all to exit code 1.
"""


class ZetaError(ValueError):
    """Base class for all input and precondition errors."""


# integer lattices
class ZeroVector(ZetaError):
    pass


class RankMismatch(ZetaError):
    pass


class DimensionMismatch(ZetaError):
    pass


class NoSolution(ZetaError):
    """Raised when a linear Diophantine system has no integer solution."""


class ImageZero(ZetaError):
    """The vector lies in the saturation of the sublattice."""


# cones and polyhedra
class EmptySupport(ZetaError):
    pass


class NotPointed(ZetaError):
    pass


class UnboundedDirection(ZetaError):
    pass


# classes and counting
class NoCountAvailable(ZetaError):
    pass


class BudgetExceeded(ZetaError):
    pass


# generating functions
class PreconditionViolated(ZetaError):
    pass


class ZeroEt(ZetaError):
    pass


# polynomials
class ParseError(ZetaError):
    """Syntax error in a polynomial; ``position`` is a 0-based offset."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} at position {position}")
        self.message = message
        self.position = position


class UnknownVariable(ParseError):
    """A name outside the declared or default variable set."""


class FaceMismatch(ZetaError):
    pass


# zeta assembly
class MissingClass(ZetaError):
    def __init__(self, subset):
        super().__init__(f"no class given for intersection {sorted(subset)}")
        self.subset = tuple(sorted(subset))
