"""Exception hierarchy and warning categories for the weakkam package.

Every error raised by the library derives from :class:`WeakKAMError`, so
callers (and the CLI) can distinguish library failures from programming
mistakes.  Warnings derive from :class:`WeakKAMWarning` and are emitted
through the standard :mod:`warnings` machinery.
"""


class WeakKAMError(Exception):
    """Base class for all library errors."""


class ConfigError(WeakKAMError):
    """Invalid parameter or configuration value (bad grid size, step, ...)."""


class EvaluationDomainError(WeakKAMError):
    """A Hamiltonian or derivative evaluation produced a non-finite value."""


class SuperlinearityRadiusError(WeakKAMError):
    """Legendre maximizer hit the momentum search boundary.

    The fiber maximization of p*v - H(x, p) found its maximum at
    +/- p_search_radius, so the reported value would be a lower bound
    only.  Retry with a larger search radius.
    """


class VelocityWindowError(WeakKAMError):
    """A requested displacement exceeds the velocity window v_max * h."""


class PreconditionError(WeakKAMError):
    """An operation was invoked on input that fails its contract.

    Typical case: a regularization routine was handed a function that does
    not pass the sub-solution test at the requested level.
    """


class ResolutionError(WeakKAMError):
    """The grid cannot certify the requested quantity.

    Raised when the smoothing-time search underflows below the time step,
    or when a saturation-set estimate comes back empty at the given
    threshold.
    """


class KTooSmallError(WeakKAMError):
    """Quadratic envelope reconstruction failed: the curvature bound is
    below the function's actual semi-concavity constant."""


class EnsembleError(WeakKAMError):
    """Too few ensemble members survived the sub-solution filter."""


class IntegratorError(WeakKAMError):
    """Energy drift along an integrated trajectory exceeded 100x the
    per-unit-time tolerance."""


class GraphBreakError(WeakKAMError):
    """A transported momentum graph folded over (lost the graph property)
    before the requested identity could be checked; reduce the time."""


class WeakKAMWarning(UserWarning):
    """Base class for library warnings."""


class WindowWarning(WeakKAMWarning):
    """A minimizer was found on the velocity-window boundary; the reported
    value may be an upper bound.  Enlarge v_max or reduce the step."""


class RefinementWarning(WeakKAMWarning):
    """Curve refinement stopped at the iteration cap before reaching the
    decrease threshold; the best value found is still returned."""
