"""Exception hierarchy.

Mathematical negatives (a pattern failing a condition) are reported through
``VerdictError`` subclasses; broken internal invariants through
``EngineInvariantBroken``.  The CLI maps these to distinct exit codes.
"""


class SignApError(Exception):
    """Base class for every error raised by this package."""


# -- input / plumbing -------------------------------------------------------

class InputError(SignApError):
    pass


class ParseError(InputError):
    pass


class NonSquare(ParseError):
    pass


class BadToken(ParseError):
    def __init__(self, row, col, token):
        self.row, self.col, self.token = row, col, token
        super().__init__(f"bad token {token!r} at ({row}, {col})")


class OrderMismatch(InputError):
    pass


class BadPermutation(InputError):
    pass


class NonpositiveMagnitude(InputError):
    pass


# -- mathematical negatives -------------------------------------------------

class VerdictError(SignApError):
    """A precondition of a mathematical statement does not hold."""


class NotMinimallyStronglyConnected(VerdictError):
    pass


class HasLoop(VerdictError):
    pass


class NotApIrreducible(VerdictError):
    pass


class ExtractionFailed(VerdictError):
    pass


class ComponentMismatch(VerdictError):
    pass


class SignPrecondition(VerdictError):
    pass


class DegenerateInput(VerdictError):
    pass


class BadVariantIndices(VerdictError):
    pass


class EpsilonOutOfRange(VerdictError):
    pass


class InequalityViolated(VerdictError):
    pass


class HypothesisViolated(VerdictError):
    pass


class ShapeMismatch(VerdictError):
    pass


class ZeroPivot(VerdictError):
    pass


class NotSimple(VerdictError):
    pass


class NotSuperpattern(VerdictError):
    pass


class NegativeDiagonal(VerdictError):
    pass


class HypothesisFails(VerdictError):
    pass


class PreconditionViolated(VerdictError):
    pass


# -- numerics ---------------------------------------------------------------

class NumericalFailure(SignApError):
    pass


class NumericallySingular(NumericalFailure):
    pass


class EpsilonExhausted(NumericalFailure):
    pass


class EngineInvariantBroken(SignApError):
    """An intermediate certificate failed its checks; indicates a bug."""
