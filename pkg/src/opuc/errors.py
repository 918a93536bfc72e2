class OpucError(Exception):
    """Base class for all errors raised by this package."""


class AliasingError(OpucError, ValueError):
    """The quadrature grid cannot resolve the requested frequency."""


class NotStrictlyInside(OpucError, ValueError):
    """A coefficient that must lie in the open unit disk does not."""


class TerminalParameter(OpucError):
    """The Schur algorithm hit a unimodular parameter and stopped.

    ``index`` is the position of the terminal parameter and ``gammas`` holds
    every parameter produced up to and including it.
    """

    def __init__(self, index, gammas):
        super().__init__(f"unimodular Schur parameter at index {index}")
        self.index = index
        self.gammas = gammas


class NotPositiveDefinite(OpucError, ValueError):
    pass


class NotUnitary(OpucError, ValueError):
    pass


class SupportOutsideInterval(OpucError, ValueError):
    """Jacobi parameters whose measure is not supported in [-2, 2]."""

    def __init__(self, index, message=None):
        super().__init__(message or f"Sturm sign condition fails at index {index}")
        self.index = index


class ConvergenceError(OpucError, RuntimeError):
    pass
