"""Power-law fits to sorted circulant eigenvalues"""

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateFitError, NotPositiveDefiniteError


@dataclass(frozen=True)
class DecayFit:
    """Least-squares fit log λ_j ≈ intercept + exponent · log j

    `max_residual` is the largest absolute residual in log space over the fitted
    indices, and `r_squared` the coefficient of determination.

    """
    exponent: float
    intercept: float
    max_residual: float
    r_squared: float
    j_min: int
    j_max: int

    @staticmethod
    def expected_exponent(nu, d):
        """Asymptotic decay exponent -(1 + 2ν/d) of Matérn eigenvalues"""
        return -(1 + 2 * nu / d)

    def to_dict(self):
        return {
            "exponent": self.exponent,
            "intercept": self.intercept,
            "max_residual": self.max_residual,
            "r_squared": self.r_squared,
            "j_min": self.j_min,
            "j_max": self.j_max,
        }


def default_window(grid):
    """Index window [N^d/64, N^d/4]"""
    return max(1, grid.cells // 64), max(1, grid.cells // 4)


def sorted_scaled_eigenvalues(factor):
    """Eigenvalues of Σ^ext divided by N^d, in non-increasing order

    These are the (S_N ρ)_k / (2γ)^d, and they approximate the eigenvalues of the
    covariance operator on the torus.

    """
    return np.sort(factor.clamped_eigs.ravel())[::-1] / factor.grid.volume


def decay_fit(factor, j_range=None, samples=256):
    """Fit the decay rate of the sorted eigenvalues over an index window

    Parameters
    ----------
    factor : SpectralFactor
        Must be positive semidefinite.
    j_range : (int, int), optional
        One-based index window [j_min, j_max]; defaults to [N^d/64, N^d/4].
    samples : int
        Number of log-spaced indices used in the fit.

    Returns
    -------
    fit : DecayFit

    Raises
    ------
    NotPositiveDefiniteError
        If the factor fails the positive-semidefiniteness predicate.
    DegenerateFitError
        If the window spans less than a decade, reaches past N^d/4, or contains
        vanishing eigenvalues.

    """
    if not factor.is_pd:
        raise NotPositiveDefiniteError(
            f"Cannot fit eigenvalue decay of an indefinite factor (min/max = {factor.margin:.3e})"
        )
    j_min, j_max = j_range if j_range is not None else default_window(factor.grid)
    j_min, j_max = int(j_min), int(j_max)
    if j_min < 1 or j_max > factor.grid.cells // 4:
        raise DegenerateFitError(
            f"Window [{j_min}, {j_max}] must lie inside [1, N^d/4 = {factor.grid.cells // 4}]"
        )
    if j_max < 10 * j_min:
        raise DegenerateFitError(f"Window [{j_min}, {j_max}] spans less than one decade")

    values = sorted_scaled_eigenvalues(factor)
    j = np.unique(np.round(np.geomspace(j_min, j_max, samples)).astype(int))
    y = values[j - 1]
    if np.any(~(y > 0)):
        raise DegenerateFitError("Fit window contains eigenvalues that vanish to round-off")
    log_j, log_y = np.log(j), np.log(y)
    exponent, intercept = np.polyfit(log_j, log_y, 1)
    residuals = log_y - (intercept + exponent * log_j)
    total = np.sum((log_y - np.mean(log_y)) ** 2)
    r_squared = 1 - np.sum(residuals**2) / total if total > 0 else 1.0
    return DecayFit(
        exponent=float(exponent),
        intercept=float(intercept),
        max_residual=float(np.max(np.abs(residuals))),
        r_squared=float(r_squared),
        j_min=j_min,
        j_max=j_max,
    )
