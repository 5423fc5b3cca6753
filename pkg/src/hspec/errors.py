"""Exception and warning types shared across the package."""


class HspecError(Exception):
    """Base class for errors raised by hspec."""


class PreconditionFailed(HspecError, ValueError):
    """An operation was called with inputs outside its contract."""


class GridTooSmall(HspecError, ValueError):
    pass


class NonConvergenceWarning(RuntimeWarning):
    """Adaptive quadrature hit its subdivision limit before meeting tolerance.

    The result is still returned, flagged with ``converged=False`` and an
    inflated error estimate.
    """
