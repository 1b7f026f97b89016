"""Exception hierarchy shared by all modules."""


class SolitonError(Exception):
    """Base class for library errors."""


class DimensionError(SolitonError, ValueError):
    pass


class NotInvertible(SolitonError, ArithmeticError):
    pass


class NoRealLog(SolitonError, ArithmeticError):
    """Raised when a matrix has a real eigenvalue <= 0 (no principal real logarithm)."""


class MatrixOverflow(SolitonError, OverflowError):
    pass


class AlphaOutOfRange(SolitonError, ValueError):
    pass


class EmptyResult(SolitonError, ValueError):
    pass


class EigenvalueObstruction(SolitonError, ArithmeticError):
    """1 - alpha is (numerically) an eigenvalue of the linear part."""


class DegenerateCurve(SolitonError, ArithmeticError):
    pass


class UndefinedInvariant(SolitonError, ArithmeticError):
    pass


class ParseError(SolitonError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
