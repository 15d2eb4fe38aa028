"""Exceptions raised by tgrf

Each exception subclasses the builtin that a caller would naturally catch, so
that `except ValueError` still works for callers who do not care about the
specific kind of failure.

"""


class DomainError(ValueError):
    """An argument lies outside the domain of a function"""


class ConstraintError(ValueError):
    """A geometric constraint between grid, cutoff, and sampling domain fails"""


class SymmetryError(ValueError):
    """Grid covariance is not even, so its spectrum is not real"""


class NotPositiveDefiniteError(ValueError):
    """A spectral factor has negative eigenvalues beyond the clamping tolerance"""


class DegenerateFitError(ValueError):
    """A power-law fit window is too short or contains unusable values"""


class MalformedTableError(ValueError):
    """A table passed for plotting or export lacks required structure"""


class ConfigError(ValueError):
    """A sweep configuration fails validation"""


class CorruptFileError(ValueError):
    """A TGRF container could not be parsed"""


class ConvergenceError(RuntimeError):
    """A refinement loop ran out of levels before converging

    The last two estimates are kept on the exception as `previous` and
    `current`, so that callers can judge how far off they were.  Quadratures
    of quantities that may overflow report logarithms.

    """

    def __init__(self, message, previous=None, current=None):
        super().__init__(message)
        self.previous = previous
        self.current = current


class NoBracketError(RuntimeError):
    """Positive definiteness was not reached at the largest allowed torus"""


class CertificationError(RuntimeError):
    """A minimal-size bracket did not hold up when recomputed from scratch"""


class ResourceError(MemoryError):
    """A grid would exceed the configured cell budget"""
