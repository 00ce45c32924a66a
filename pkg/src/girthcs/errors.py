"""Exception hierarchy shared across the package."""


class GirthCSError(Exception):
    """Base class for all package errors."""


class FormatError(GirthCSError, ValueError):
    """Malformed matrix, vector or certificate text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleParameters(GirthCSError, ValueError):
    """Requested construction or bound is outside its domain."""


class GenerationError(GirthCSError):
    """Matrix generator could not meet the requested girth."""


class BoundsNotApplicable(GirthCSError, ValueError):
    """The guarantee formulas do not cover this matrix."""


class LpError(GirthCSError):
    """Linear program failed (infeasible, unbounded, or iteration limit)."""


class EnumerationLimit(GirthCSError, ValueError):
    """Brute-force enumeration would exceed its guard."""
