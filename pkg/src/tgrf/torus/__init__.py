"""Torus grids, periodized covariances, and their circulant spectra"""

from .grid import TorusGrid
from .periodization import (
    SchemeKind, PeriodizationScheme, SchemeDescriptor, periodized_cov_on_grid
)
from .spectral import (
    SpectralFactor, spectral_eigenvalues, factorize, is_positive_semidefinite,
    dense_circulant_matrix, aliasing_identity_residual,
)
from .decay import DecayFit, decay_fit, default_window, sorted_scaled_eigenvalues
from .bounds import (
    SizeBound, sufficient_gamma_classical, sufficient_kappa_smooth, sufficient_gamma_smooth
)
from .container import save_factor, load_factor, save_samples, load_samples, payload_kind
