"""Exception types shared across the package."""


class ArityError(ValueError):
    """Wrong number of arguments or coordinates."""


class LimitExceeded(ValueError):
    """A finite enumeration was asked to go beyond its configured size."""


class NonRegularError(ValueError):
    """A torus element hit a vanishing discriminant factor."""


class ShapeError(ValueError):
    """An input does not have the shape an operation requires."""


class InexactDivision(ArithmeticError):
    """A Laurent polynomial division left a remainder."""


class TheoremViolation(AssertionError):
    """A computation contradicted a proven statement.

    Reserved for genuine mathematical failures, never for bad input.
    """
