"""Exception types raised by discordcheck.

All of them derive from ``ValueError`` so callers that only care about
"bad input" can catch that.
"""


class DiscordCheckError(ValueError):
    """Base class for input/validation errors."""


class NonSquare(DiscordCheckError):
    pass


class NotHermitian(DiscordCheckError):
    def __init__(self, asymmetry: float, tol: float):
        self.asymmetry = asymmetry
        super().__init__(f"matrix is not Hermitian: max |X - X^dagger| = {asymmetry:.3e} exceeds {tol:.1e}")


class NotPSD(DiscordCheckError):
    def __init__(self, min_eigenvalue: float, tol: float):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(f"matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} < -{tol:.1e}")


class BadTrace(DiscordCheckError):
    def __init__(self, trace: float, tol: float):
        self.trace = trace
        super().__init__(f"trace is {trace!r}, expected 1 within {tol:.1e}")


class InvalidOrder(DiscordCheckError):
    pass


class DimensionMismatch(DiscordCheckError):
    pass


class InvalidDim(DiscordCheckError):
    pass


class InvalidZ(DiscordCheckError):
    pass


class IncompleteBasis(DiscordCheckError):
    pass


class BadProbabilities(DiscordCheckError):
    pass


class BlockDimensionMismatch(DiscordCheckError):
    pass


class BadRank(DiscordCheckError):
    pass


class NotQubitA(DiscordCheckError):
    """Raised when a 2 x n-only routine receives a state with m != 2."""


class ClosedFormRequiresQubitA(NotQubitA):
    pass


class NotNPT(DiscordCheckError):
    pass
