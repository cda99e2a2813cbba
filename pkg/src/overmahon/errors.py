"""Exception hierarchy shared by every module of the package."""


class OverMahonError(Exception):
    """Base class for all errors raised by :mod:`overmahon`."""


class InvalidArgumentError(OverMahonError, ValueError):
    """An argument violates an operation's precondition."""


class ResourceLimitError(OverMahonError):
    """An exhaustive enumeration was requested above the configured cap."""

    def __init__(self, n, cap):
        super().__init__(f"n={n} exceeds the enumeration cap {cap} "
                         f"(raise it with --cap or OVERMAHON_CAP)")
        self.n = n
        self.cap = cap


class SubtractionUnderflowError(OverMahonError, ArithmeticError):
    """A checked subtraction of naturals went negative.

    Only a transcription bug in a recurrence can trigger this.
    """


class NoCommonVertexError(OverMahonError, ValueError):
    """Two lattice paths share no vertex, so their tails cannot be switched."""


class NoValidPivotError(OverMahonError):
    """No index in 1..n-1 satisfies the pivot conditions of the injection."""


class InternalConsistencyError(OverMahonError):
    """A construction produced an object outside its target class.

    ``trace`` carries the intermediate states that led to the failure.
    """

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = list(trace)
