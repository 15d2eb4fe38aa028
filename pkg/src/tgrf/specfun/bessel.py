"""Modified Bessel function of the second kind, K_ν, at real order

Everything here is computed in log space and only exponentiated at the very end,
so that huge values near t → 0 and tiny values at large t are both handled.  The
order is mapped through |ν| before anything else, since K_{-ν} = K_ν.

Three evaluation paths are used:

  * half-integer orders ν = n + 1/2 use the finite closed-form sum;
  * other orders use the exponentially scaled `scipy.special.kve`;
  * where `kve` overflows (very large orders at tiny arguments), the integral
    representation K_ν(t) = ∫₀^∞ exp(-t cosh s) cosh(νs) ds is evaluated by a
    log-space trapezoidal rule, which converges geometrically for this
    analytic, doubly-exponentially decaying integrand.

The same trapezoidal rule, refined level by level, is exposed as
`bessel_k_quadrature_oracle` for validation.

"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, ConvergenceError

logger = logging.getLogger(__name__)

MAX_ORDER = 60.0


@dataclass(frozen=True)
class BesselEvalConfig:
    """Tolerances used when K_ν has to fall back to quadrature

    Parameters
    ----------
    rel_tol : float
        Relative accuracy contract for `bessel_k`.
    max_quadrature_nodes : int
        Largest number of trapezoidal nodes before giving up.
    switchover_t : float
        Arguments below this use the quadrature path whenever the scaled
        library value is not finite.  Above it, `kve` is always finite.

    """
    rel_tol: float = 1e-12
    max_quadrature_nodes: int = 4096
    switchover_t: float = 2.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive; got {self.rel_tol}")
        if self.max_quadrature_nodes < 16:
            raise DomainError(f"max_quadrature_nodes must be at least 16; got {self.max_quadrature_nodes}")
        if not self.switchover_t > 0:
            raise DomainError(f"switchover_t must be positive; got {self.switchover_t}")


def _check_arguments(nu, t):
    nu = np.abs(np.asarray(nu, dtype=float))
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)):
        raise DomainError(f"K_ν(t) requires t > 0; got min(t)={np.min(t)}")
    if np.any(~(nu <= MAX_ORDER)):
        raise DomainError(f"K_ν(t) is supported for |ν| ≤ {MAX_ORDER:g}; got max(|ν|)={np.max(nu)}")
    return np.broadcast_arrays(nu, t)


def _half_integer_order(nu):
    """Return n if ν = n + 1/2 exactly, otherwise -1"""
    twice = 2.0 * nu
    return np.where((twice == np.round(twice)) & (np.round(twice) % 2 == 1), (np.round(twice) - 1) // 2, -1).astype(int)


def log_bessel_k_half_integer(n, t):
    """ln K_{n+1/2}(t) from the finite closed-form sum

    K_{n+1/2}(t) = √(π/(2t)) e^{-t} Σ_{k=0}^{n} (n+k)! / (k! (n-k)!) (2t)^{-k}

    The coefficients are exact integers, so their logarithms are correctly
    rounded; the sum is accumulated with `logsumexp`.

    """
    from scipy.special import logsumexp
    n = int(n)
    if n < 0:
        raise DomainError(f"Half-integer order requires n ≥ 0; got {n}")
    t = np.asarray(t, dtype=float)
    log_coefficients = np.array([
        math.log(math.factorial(n + k) // (math.factorial(k) * math.factorial(n - k)))
        for k in range(n + 1)
    ])
    k = np.arange(n + 1)
    log_2t = np.log(2.0 * t)[..., np.newaxis]
    log_sum = logsumexp(log_coefficients - k * log_2t, axis=-1)
    return 0.5 * np.log(np.pi / (2.0 * t)) - t + log_sum


def bessel_k_half_integer(n, t):
    """K_{n+1/2}(t) from the finite closed-form sum"""
    return np.exp(log_bessel_k_half_integer(n, t))


def _log_integrand(nu, t, s):
    # ln[exp(-t (cosh s - 1)) cosh(νs)], i.e. the integrand scaled by e^t
    return -t * (np.cosh(s) - 1.0) + np.logaddexp(nu * s, -nu * s) - np.log(2.0)


def _truncation_point(nu, t):
    """Smallest s on a geometric ladder beyond which the integrand is negligible

    The integrand is bounded by exp(-t (cosh s - 1) + νs), which must drop below
    e^{-40} times its value at s=0 and be decreasing from there on.

    """
    s = 1.0
    while (-t * (math.cosh(s) - 1.0) + nu * s > -40.0) or (t * math.sinh(s) < nu):
        s *= 1.25
    return s


def _log_trapezoid(nu, t, upper, intervals):
    from scipy.special import logsumexp
    s = np.linspace(0.0, upper, intervals + 1)
    g = _log_integrand(nu, t, s)
    g[0] -= np.log(2.0)
    g[-1] -= np.log(2.0)
    return logsumexp(g) + np.log(upper / intervals)


def _log_bessel_k_quadrature(nu, t, levels, tol, initial_intervals=64):
    """ln K_ν(t) by trapezoidal refinement; returns (value, intervals used)"""
    upper = _truncation_point(nu, t)
    intervals = initial_intervals
    current = _log_trapezoid(nu, t, upper, intervals)
    for _ in range(levels):
        previous = current
        intervals *= 2
        current = _log_trapezoid(nu, t, upper, intervals)
        # ulps of a large logarithm exceed any absolute tolerance
        if abs(current - previous) <= max(tol, 4 * np.finfo(float).eps * abs(current)):
            return current - t, intervals
    raise ConvergenceError(
        f"Quadrature for K_{nu}({t}) did not converge after {levels} refinements "
        f"(last two scaled log-estimates {previous!r}, {current!r})",
        previous=previous - t,
        current=current - t,
    )


def bessel_k_quadrature_oracle(nu, t, abs_levels=12, log=False):
    """Brute-force K_ν(t) from the integral representation

    This is a slow reference: the truncated integral ∫₀^S exp(-t cosh s) cosh(νs) ds
    is evaluated by the trapezoidal rule, doubling the number of nodes from 64 up
    to `abs_levels` times until two successive estimates agree to 1e-14 relative.

    Parameters
    ----------
    nu : float
        Order; negative orders are mapped to |ν|.
    t : float
        Positive argument.
    abs_levels : int
        Maximum number of refinements.
    log : bool
        If True, return ln K_ν(t) instead, which stays finite where K_ν(t) itself
        over- or underflows.

    Raises
    ------
    ConvergenceError
        If the estimates have not settled after `abs_levels` refinements; the
        exception carries the last two estimates of ln K_ν(t).

    """
    if abs_levels < 1:
        raise DomainError(f"abs_levels must be at least 1; got {abs_levels}")
    nu, t = (float(v) for v in _check_arguments(nu, t))
    value, intervals = _log_bessel_k_quadrature(nu, t, abs_levels, 1e-14)
    logger.debug("K_%g(%g) oracle converged with %d intervals", nu, t, intervals)
    return value if log else math.exp(value)


def log_bessel_k(nu, t, cfg=None):
    """Natural logarithm of K_ν(t), vectorized over `nu` and `t`

    See `bessel_k` for parameters.

    """
    from scipy.special import kve
    cfg = cfg or BesselEvalConfig()
    nu, t = _check_arguments(nu, t)
    shape = nu.shape
    nu, t = nu.ravel(), t.ravel()
    result = np.empty(nu.shape, dtype=float)

    half = _half_integer_order(nu)
    for n in np.unique(half[half >= 0]):
        mask = half == n
        result[mask] = log_bessel_k_half_integer(n, t[mask])

    general = half < 0
    with np.errstate(over="ignore", divide="ignore"):
        scaled = kve(nu[general], t[general])
        result[general] = np.log(scaled) - t[general]

    # kve overflows for large orders at tiny arguments
    bad = general & ~np.isfinite(result) & (t < cfg.switchover_t)
    if np.any(bad):
        levels = max(1, int(math.log2(cfg.max_quadrature_nodes / 64)))
        for index in np.flatnonzero(bad):
            result[index], _ = _log_bessel_k_quadrature(
                float(nu[index]), float(t[index]), levels, cfg.rel_tol
            )
    result = result.reshape(shape)
    return result[()] if result.ndim == 0 else result


def bessel_k(nu, t, cfg=None):
    """Modified Bessel function of the second kind K_ν(t)

    Parameters
    ----------
    nu : array_like
        Real order with |ν| ≤ 60; negative orders use K_{-ν} = K_ν.
    t : array_like
        Positive real argument(s); broadcast against `nu`.
    cfg : BesselEvalConfig, optional
        Tolerances for the quadrature fallback.

    Returns
    -------
    K : float or ndarray
        K_ν(t).  Values below the smallest double are returned as 0, and values
        above the largest double as inf; use `log_bessel_k` to avoid both.

    Raises
    ------
    DomainError
        If t ≤ 0 or |ν| > 60.

    """
    with np.errstate(under="ignore", over="ignore"):
        return np.exp(log_bessel_k(nu, t, cfg=cfg))


def log_bessel_k_upper_bound(nu, t):
    """ln of e·2^{2ν}Γ(ν)/(2√(2t))·e^{-t}, an upper bound on K_ν(t) for t ≥ 1/2"""
    from .gamma import log_gamma
    nu = np.asarray(nu, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(~(nu > 0)):
        raise DomainError("The Bessel upper bound requires ν > 0")
    if np.any(~(t >= 0.5)):
        raise DomainError("The Bessel upper bound requires t ≥ 1/2")
    return 1.0 + 2 * nu * np.log(2.0) + log_gamma(nu) - np.log(2.0) - 0.5 * np.log(2.0 * t) - t


def bessel_k_upper_bound(nu, t):
    """Upper bound e·2^{2ν}Γ(ν)/(2√(2t))·e^{-t} on K_ν(t), valid for ν > 0 and t ≥ 1/2"""
    with np.errstate(under="ignore", over="ignore"):
        return np.exp(log_bessel_k_upper_bound(nu, t))
