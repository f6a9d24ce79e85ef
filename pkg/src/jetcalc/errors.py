"""Exception types shared across the package."""


class JetcalcError(Exception):
    """Base class for all errors raised by jetcalc."""


class DimensionError(JetcalcError, ValueError):
    """Objects built over different signatures (m, n) were combined."""


class NotDivisibleError(JetcalcError, ValueError):
    """A multi-index subtraction would produce a negative entry."""


class PreconditionError(JetcalcError, ValueError):
    """An operation was called outside its documented domain."""


class IncompleteAssignmentError(JetcalcError, KeyError):
    """An evaluation assignment does not cover every variable of a polynomial."""


class NotDecomposableError(JetcalcError, ValueError):
    """The quadratic part of a Lagrangian violates the symbol condition.

    ``H`` is the offending multi-index of length 2k and ``alphas`` the pair of
    dependent-variable indices whose partition fails to cancel.
    """

    def __init__(self, message, H=None, alphas=None):
        super().__init__(message)
        self.H = H
        self.alphas = alphas


class ParseError(JetcalcError, ValueError):
    """Syntax or name error in the expression language, with a 1-based position."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.reason = message
