"""Exception types shared across the package."""


class PtcError(Exception):
    """Base class for all ptcsurface errors."""


class DomainError(PtcError, ValueError):
    """An argument lies outside the legal domain of an operation."""


class BracketError(PtcError, RuntimeError):
    """A root or minimum could not be bracketed within the expansion budget."""


class NoSolution(PtcError):
    """The boundary equation has no solution because ``a`` is below the minimum."""

    def __init__(self, a, minimum, what="nu"):
        self.a = a
        self.minimum = minimum
        self.what = what
        super().__init__(f"no solution: a <= {what} (a={a!r}, {what}={minimum!r})")


class DegenerateDouble(PtcError):
    """``a`` coincides with the minimum, so both branches collapse onto it."""

    def __init__(self, a, minimum, argmin):
        self.a = a
        self.minimum = minimum
        self.argmin = argmin
        super().__init__(
            f"degenerate double root: a={a!r} equals the minimum {minimum!r} "
            f"at {argmin!r}"
        )


class NotCriticalError(PtcError):
    """The radii handed to a Hessian classifier are not a critical point."""
