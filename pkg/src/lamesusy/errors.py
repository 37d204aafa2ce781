class LameError(Exception):
    """Base class for all errors raised by lamesusy."""


class DomainError(LameError, ValueError):
    pass


class DivergenceError(DomainError):
    """K(m) diverges at m = 1."""


class PreconditionError(LameError, ValueError):
    pass


class DegenerateInputError(LameError, ValueError):
    pass


class DegenerateOutputError(LameError, ArithmeticError):
    pass


class NumericalError(LameError, ArithmeticError):
    pass


class MissedEdgeError(NumericalError):
    def __init__(self, message, bracket):
        super().__init__(f"{message} (bracket {bracket[0]:.12g}..{bracket[1]:.12g})")
        self.bracket = bracket


class StructuralMismatchError(LameError):
    pass
