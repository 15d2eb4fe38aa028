"""Exact sampling from spectral factors, and checks on the samples"""

from .rng import RngStream, NormalStream
from .draw import SampleBatch, draw
from .checks import (
    empirical_covariance, lag_columns, half_sample_independence_check,
    marginal_normality_check, validation_report,
)
