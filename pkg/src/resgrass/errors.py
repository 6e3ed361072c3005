"""Exception types raised by resgrass."""


class ResgrassError(Exception):
    """Base class for all library errors."""


class InvalidInput(ResgrassError, ValueError):
    """An argument violates the documented precondition."""


class SingularInput(InvalidInput):
    """A matrix that must be invertible is (numerically) singular."""


class NotInSectionDomain(InvalidInput):
    """Projections are too far apart for the local cross section."""


class NotSameOrbit(InvalidInput):
    """Projections of different rank cannot be joined by a unitary."""


class NumericalFailure(ResgrassError, ArithmeticError):
    """An iterative kernel failed to converge or a result lost accuracy."""
