"""Shared exception types."""


class DimensionMismatchError(ValueError):
    """Operands live in different ambient dimensions."""


class IdenticalLinesError(ValueError):
    """Intersection was asked for a line with itself; deduplicate first."""


class ZeroPolynomialError(ValueError):
    """Operation needs a nonzero polynomial."""


class FileFormatError(ValueError):
    """Malformed input file; message names the offending field."""


class GenericityFailureError(RuntimeError):
    """Randomized projection failed verification on every retry."""


class InternalInvariantViolation(RuntimeError):
    """A property that is a theorem failed; indicates an implementation bug."""


class ContradictionBugError(InternalInvariantViolation):
    """Derivative cascade exhausted every order, which is impossible.

    Carries the partial trace so the run can be inspected.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace
