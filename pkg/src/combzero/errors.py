"""Exception hierarchy shared by every module."""


class CombzeroError(Exception):
    """Base class for all errors raised by combzero."""


class InvalidParameter(CombzeroError, ValueError):
    pass


class NonOrthogonalFamily(CombzeroError, ValueError):
    pass


class NormalizationTooShort(CombzeroError, IndexError):
    pass


class InvalidThetaSequence(CombzeroError, ValueError):
    pass


class InvalidTau(CombzeroError, ValueError):
    pass


class HypothesisViolated(CombzeroError, ValueError):
    pass


class DegreeTooSmall(CombzeroError, ValueError):
    pass


class EmptyInput(CombzeroError, ValueError):
    pass


class OracleOutOfRange(CombzeroError, ValueError):
    pass


class NotARoot(CombzeroError, ValueError):
    pass


class PreconditionFailed(CombzeroError):
    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = list(offending)


class InvalidFamily(CombzeroError, ValueError):
    pass


class NumericalFailure(CombzeroError, ArithmeticError):
    pass
