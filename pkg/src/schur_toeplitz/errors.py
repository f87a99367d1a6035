"""Exception hierarchy.

``InputError`` subclasses signal malformed input (CLI exit code 2);
``MathError`` subclasses signal a well-formed request that has no answer
under the requested method (CLI exit code 3).
"""


class SchurToeplitzError(Exception):
    pass


class InputError(SchurToeplitzError, ValueError):
    pass


class MathError(SchurToeplitzError, ArithmeticError):
    pass


class PartitionError(InputError):
    """Tuple is not weakly decreasing."""


class NegativePartError(PartitionError):
    """A part came out negative; usually a caller passed inconsistent indices."""


class IndexSetError(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class InvalidIndex(InputError):
    pass


class ScalarParseError(InputError):
    pass


class RepeatedRoots(MathError):
    pass


class DegenerateDenominator(MathError):
    pass


class SeriesTruncation(MathError):
    """An e-sequence (series mode) was queried beyond the supplied degree."""


class RootsUnavailable(MathError):
    """A root-based formula was requested for a symbol given without roots."""


class MethodUnavailable(MathError):
    pass


class SingularMatrix(MathError):
    pass


class RequiresPositiveP(MathError):
    pass


class NonConvergence(MathError):
    pass


class OrderTooLarge(MathError):
    pass


class SizeTooLarge(MathError):
    pass
