"""Special functions: K_ν, ln Γ, and cardinal B-splines"""

from .gamma import log_gamma
from .bessel import (
    BesselEvalConfig, bessel_k, log_bessel_k, bessel_k_quadrature_oracle,
    bessel_k_half_integer, log_bessel_k_half_integer,
    bessel_k_upper_bound, log_bessel_k_upper_bound, MAX_ORDER,
)
from .bspline import cardinal_bspline, integrated_bspline, bspline_derivative
