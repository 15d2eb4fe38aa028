"""Cardinal B-splines with nodes {-P, ..., -1, 0}

The order-P spline N_P is the piecewise polynomial of degree P-1 supported on
[-P, 0], with unit integral and symmetric about -P/2.  Evaluation goes through
`scipy.interpolate.BSpline.basis_element`; the antiderivative and derivatives
are expressed exactly in terms of other cardinal splines, so no quadrature or
finite differencing is ever needed.

"""

import functools
from math import comb

import numpy as np

from ..errors import DomainError


def _check_order(P):
    if int(P) != P or P < 1:
        raise DomainError(f"B-spline order must be a positive integer; got {P}")
    return int(P)


@functools.lru_cache()
def _basis(P):
    from scipy.interpolate import BSpline
    return BSpline.basis_element(np.arange(-P, 1, dtype=float), extrapolate=False)


def cardinal_bspline(P, u):
    """Cardinal B-spline N_P(u) with nodes {-P, ..., 0}

    Parameters
    ----------
    P : int
        Order (P ≥ 1); the polynomial degree is P-1.
    u : array_like
        Evaluation point(s).

    Returns
    -------
    N : float or ndarray
        Values in [0, 1]; zero outside the half-open support [-P, 0).

    """
    P = _check_order(P)
    u = np.asarray(u, dtype=float)
    inside = (u >= -P) & (u < 0)
    values = np.zeros(u.shape)
    if np.any(inside):
        values[inside] = _basis(P)(u[inside])
    values = np.clip(values, 0.0, 1.0)
    return values[()] if values.ndim == 0 else values


def integrated_bspline(P, u):
    """Cumulative integral M_P(u) = ∫_{-∞}^{u} N_P(v) dv

    Uses the telescoping identity M_P(u) = Σ_{i=1}^{P} N_{P+1}(u - i), which holds
    exactly for u ∈ [-P, 0]; outside that interval the value is 0 or 1.

    """
    P = _check_order(P)
    u = np.asarray(u, dtype=float)
    clipped = np.clip(u, -P, 0.0)
    values = sum(cardinal_bspline(P + 1, clipped - i) for i in range(1, P + 1))
    values = np.where(u <= -P, 0.0, np.where(u >= 0, 1.0, np.clip(values, 0.0, 1.0)))
    return values[()] if values.ndim == 0 else values


def bspline_derivative(P, j, u):
    """The j-th derivative of N_P at `u`

    N_P^{(j)}(u) = Σ_{i=0}^{j} (-1)^i C(j, i) N_{P-j}(u + j - i)

    which is the repeated difference rule N_P'(u) = N_{P-1}(u+1) - N_{P-1}(u) for
    these nodes.  Only j ≤ P-1 is meaningful (N_1 is the last spline left).

    """
    P = _check_order(P)
    j = int(j)
    if j < 0 or j > P - 1:
        raise DomainError(f"Derivative order must satisfy 0 ≤ j ≤ P-1 = {P-1}; got {j}")
    if j == 0:
        return cardinal_bspline(P, u)
    u = np.asarray(u, dtype=float)
    values = sum(
        (-1) ** i * comb(j, i) * cardinal_bspline(P - j, u + j - i)
        for i in range(j + 1)
    )
    return values[()] if np.ndim(values) == 0 else values
