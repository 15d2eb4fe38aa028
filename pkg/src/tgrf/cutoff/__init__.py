"""Cutoff functions for classical and smooth periodization"""

from .cutoffs import (
    CutoffKind, CutoffSpec, default_p,
    phi_univariate, phi_radial, phi_derivative, derivative_bound_check,
)
