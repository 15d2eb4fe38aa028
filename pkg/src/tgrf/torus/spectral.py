"""Circulant eigenvalues of periodized covariances

The matrix h^d Σ^ext with entries h^d ρ^ext(x_i - x_j) on the torus grid is
(nested block) circulant, so its eigenvalues are the discrete Fourier
coefficients

    (S_N ρ)_k = h^d Σ_n ρ^ext(x_n) e^{-iω_k·x_n},     ω_k = πk/γ,

computed by a single d-dimensional FFT.  Eigenvalue arrays are indexed by k in
FFT storage order, like the grid values they come from.

"""

import logging
from dataclasses import dataclass, field

import numpy as np

from ..errors import SymmetryError
from ..utilities import array_checksum, setting

logger = logging.getLogger(__name__)

# Largest imaginary part tolerated, relative to the largest real part
_IMAGINARY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SpectralFactor:
    """Eigenvalues of h^d Σ^ext with the data that produced them

    Parameters
    ----------
    eigs : ndarray
        Real eigenvalues (S_N ρ)_k, shape `grid.shape`, FFT order.  Stored
        read-only.
    grid : TorusGrid
    scheme : PeriodizationScheme or None
    model : CovarianceModel or None
    rel_tol : float
        Relative tolerance of the positive-semidefiniteness predicate.

    """
    eigs: np.ndarray
    grid: object
    scheme: object = None
    model: object = None
    rel_tol: float = field(default=None)

    def __post_init__(self):
        eigs = np.array(self.eigs, dtype=float)
        if eigs.shape != self.grid.shape:
            raise ValueError(f"Eigenvalue array has shape {eigs.shape}; the grid has shape {self.grid.shape}")
        eigs.setflags(write=False)
        object.__setattr__(self, "eigs", eigs)
        if self.rel_tol is None:
            object.__setattr__(self, "rel_tol", float(setting("pd_rel_tol")))

    @property
    def min_eig(self):
        return float(np.min(self.eigs))

    @property
    def max_eig(self):
        return float(np.max(self.eigs))

    @property
    def trace(self):
        return float(np.sum(self.eigs))

    @property
    def margin(self):
        """min_eig / max_eig; nonnegative exactly when the factor is positive semidefinite"""
        return self.min_eig / self.max_eig if self.max_eig > 0 else -np.inf

    @property
    def is_pd(self):
        return is_positive_semidefinite(self, self.rel_tol)

    @property
    def clamped_eigs(self):
        """Eigenvalues with negatives inside the tolerance set to 0"""
        return np.maximum(self.eigs, 0.0)

    @property
    def clamped_mass(self):
        """Total magnitude of the negative eigenvalues removed by clamping"""
        return float(-np.sum(np.minimum(self.eigs, 0.0)))

    @property
    def variance(self):
        """Marginal variance of the sampled field, Σ_k clamped eigs / (2γ)^d"""
        return float(np.sum(self.clamped_eigs)) / self.grid.volume

    @property
    def checksum(self):
        """MD5 of the eigenvalues, used to tag samples drawn from this factor"""
        return array_checksum(np.array([self.grid.d, self.grid.n_per_axis]), self.eigs)

    def covariance_on_grid(self):
        """ρ^ext on the grid, recovered from the eigenvalues by inverse FFT"""
        import scipy.fft
        return scipy.fft.ifftn(self.eigs).real / self.grid.h ** self.grid.d


def spectral_eigenvalues(cov_grid, grid, scheme=None, model=None, rel_tol=None, workers=None):
    """Eigenvalues of the circulant matrix generated by `cov_grid`

    Parameters
    ----------
    cov_grid : ndarray
        Periodized covariance at the grid points, FFT storage order.  Must be
        even under n → -n (mod N).
    grid : TorusGrid
    scheme, model : optional
        Recorded on the result.
    rel_tol : float, optional
        Tolerance of the positive-semidefiniteness predicate; defaults to the
        `pd_rel_tol` setting.
    workers : int, optional
        Passed on to `scipy.fft.fftn`.

    Returns
    -------
    factor : SpectralFactor

    Raises
    ------
    SymmetryError
        If the transform has an imaginary part above 1e-10 times its largest
        real part, which means `cov_grid` is not even.

    """
    import scipy.fft
    cov_grid = np.asarray(cov_grid, dtype=float)
    if cov_grid.shape != grid.shape:
        raise ValueError(f"Covariance array has shape {cov_grid.shape}; the grid has shape {grid.shape}")
    transform = scipy.fft.fftn(cov_grid, workers=workers) * grid.h ** grid.d
    scale = np.max(np.abs(transform.real))
    residual = np.max(np.abs(transform.imag))
    if residual > _IMAGINARY_TOL * scale:
        raise SymmetryError(
            f"Spectrum has imaginary part {residual:.3e} relative to {scale:.3e}; "
            "the grid covariance is not even"
        )
    factor = SpectralFactor(transform.real, grid, scheme=scheme, model=model, rel_tol=rel_tol)
    logger.debug("Factor on N=%d: min/max eigenvalue %.3e", grid.n_per_axis, factor.margin)
    return factor


def factorize(model, grid, scheme, rel_tol=None, workers=None):
    """Periodize `model` on `grid` with `scheme` and compute its eigenvalues"""
    from .periodization import periodized_cov_on_grid
    cov = periodized_cov_on_grid(model, grid, scheme)
    return spectral_eigenvalues(cov, grid, scheme=scheme, model=model, rel_tol=rel_tol, workers=workers)


def is_positive_semidefinite(factor, rel_tol=1e-13):
    """Whether min_eig ≥ -rel_tol · max_eig

    Negative eigenvalues that pass this test are clamped to zero before sampling
    (see `SpectralFactor.clamped_eigs`).

    """
    return bool(factor.max_eig > 0 and factor.min_eig >= -rel_tol * factor.max_eig)


def dense_circulant_matrix(cov_grid, grid):
    """Explicitly assembled nested-circulant matrix h^d Σ^ext

    Rows and columns run over grid points in FFT storage order (C order).  This
    is a test oracle; its size is N^d × N^d.

    """
    cov_grid = np.asarray(cov_grid, dtype=float)
    N = grid.n_per_axis
    positions = np.indices(grid.shape).reshape(grid.d, -1).T
    difference = np.mod(positions[:, np.newaxis, :] - positions[np.newaxis, :, :], N)
    return grid.h ** grid.d * cov_grid[tuple(np.moveaxis(difference, -1, 0))]


def aliasing_identity_residual(model, grid, scheme, k, M, refinement=None, func=None):
    """Residual of the trapezoidal-rule aliasing identity at frequency index `k`

    The discrete coefficient (S_N f)_k of a 2γ-periodic function f equals the
    sum of its continuous Fourier coefficients f̂_{k+mN} over all m ∈ Z^d.  The
    continuous coefficients are approximated by the discrete ones on a grid
    refined by a factor R, and the residual

        (S_N f)_k - Σ_{|m|∞ ≤ M} (S_{RN} f)_{k+mN}

    is returned.  It tends to zero as the window M grows, and vanishes to
    round-off once the window covers every residue mod R.

    Parameters
    ----------
    model, grid, scheme
        The periodized covariance f = ρ^ext to test.
    k : int or tuple of int
        Frequency multi-index in {-N/2, ..., N/2-1}^d.
    M : int
        Half-width of the alias window, M ≥ 1.
    refinement : int, optional
        Refinement factor R; defaults to max(8, 2M+2).
    func : callable, optional
        Use this 2γ-periodic function instead of ρ^ext.  It receives an array of
        points of shape (..., d) and returns values of shape (...).

    """
    import scipy.fft
    from .grid import TorusGrid
    from .periodization import periodized_cov_on_grid

    M = int(M)
    if M < 1:
        raise ValueError(f"Alias window must satisfy M ≥ 1; got {M}")
    R = int(refinement) if refinement is not None else max(8, 2 * M + 2)
    d, N = grid.d, grid.n_per_axis
    k = np.atleast_1d(np.asarray(k, dtype=int))
    if k.shape != (d,):
        raise ValueError(f"Frequency index must have {d} components; got {k}")

    fine = TorusGrid(d=d, n_per_axis=R * N, h=grid.h / R, e0=grid.e0)
    if func is None:
        fine_values = periodized_cov_on_grid(model, fine, scheme)
    else:
        fine_values = np.asarray(func(fine.points()), dtype=float)

    # the coarse grid is every R-th point of the fine one, in FFT order on both
    coarse_values = fine_values[(slice(None, None, R),) * d]
    coarse = scipy.fft.fftn(coarse_values) * grid.h ** d
    refined = scipy.fft.fftn(fine_values) * fine.h ** d

    value = coarse[tuple(np.mod(k, N))]
    aliases = 0.0
    for m in np.ndindex(*((2 * M + 1,) * d)):
        index = k + N * (np.array(m) - M)
        aliases += refined[tuple(np.mod(index, R * N))]
    return float(np.real(value - aliases))
