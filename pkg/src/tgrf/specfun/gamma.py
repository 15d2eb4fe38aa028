"""Logarithm of the Gamma function"""

import numpy as np

from ..errors import DomainError


def log_gamma(x):
    """Natural logarithm of Γ(x) for positive real `x`

    Parameters
    ----------
    x : array_like
        Positive real argument(s).

    Returns
    -------
    lg : float or ndarray
        ln Γ(x), with the shape of `x`.

    Raises
    ------
    DomainError
        If any entry of `x` is not strictly positive.

    """
    from scipy.special import gammaln
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError(f"log_gamma requires x > 0; got min(x)={np.min(x)}")
    lg = gammaln(x)
    return lg[()] if lg.ndim == 0 else lg
