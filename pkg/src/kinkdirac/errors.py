"""Exception hierarchy shared across the package.

Every numerical failure raises a subclass of :class:`KinkDiracError`, so
callers (and the CLI) can distinguish algorithmic failures from programming
errors.
"""


class KinkDiracError(Exception):
    """Base class for all numerical/domain failures raised by this package."""


class DomainError(KinkDiracError):
    """Evaluation requested outside the valid domain (e.g. outside the series disk)."""


class ConvergenceError(KinkDiracError):
    """A series or iteration failed to converge within its term/step budget."""


class DegenerateGammaError(KinkDiracError):
    """The Heun gamma parameter is (too close to) an integer, so the second
    local solution degenerates to the logarithmic case, which is out of scope."""


class PathError(KinkDiracError):
    """A continuation path violates singularity clearance or crosses the branch cut."""


class DegenerateBasisError(KinkDiracError):
    """The matching basis is numerically dependent (Wronskian too small)."""


class StepFailure(KinkDiracError):
    """The adaptive ODE integrator could not meet its tolerances."""


class FitError(KinkDiracError):
    """An asymptotic tail fit did not reach the required residual."""
