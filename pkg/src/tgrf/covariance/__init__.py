"""Matérn covariance kernels"""

from .matern import CovarianceModel, rho, spectral_density, rho_scaling_check
