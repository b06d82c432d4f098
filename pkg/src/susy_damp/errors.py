"""Exception types shared across the package."""


class SusyDampError(Exception):
    """Base class for every package-specific error."""


class DomainError(SusyDampError, ValueError):
    """A coefficient parametrization was requested outside its domain.

    The amplitude/phase form does not cover every sign combination of the
    superposition weights; callers that hit this must keep the (A, B) form.
    """


class SingularTime(SusyDampError, ValueError):
    """Evaluation was requested inside the guard band around t* = -1/gamma."""


class RegimeError(SusyDampError, ValueError):
    """An operation was called with parameters from the wrong damping regime."""


class DerivativeUnavailable(SusyDampError, RuntimeError):
    """Finite differencing cannot produce the requested derivative.

    Raised when a stencil would have to straddle the singular instant, or
    when the admissible side is too narrow for a meaningful step.
    """


class SingularInterval(SusyDampError, ValueError):
    """An integration interval contains the singular instant t* = -1/gamma."""


class StepFailure(SusyDampError, RuntimeError):
    """The adaptive step size underflowed; the problem is effectively singular."""


class UsageError(SusyDampError):
    """Inconsistent command-line flags or config-file input."""
