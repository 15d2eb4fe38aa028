"""Minimal-γ searches, sweeps, decay reports, plots, and the command line"""

from .config import SweepConfig, default_configs
from .min_gamma import MinGammaResult, min_gamma, certify, initial_upper_n
from .sweeps import SweepDataFrame, fig2_sweep, fig3_sweep, run_sweep, FIG2_COLUMNS, FIG3_COLUMNS
from .decay_report import eig_decay_report, classical_prefactor_trend
from .plotting import AxesSpec, svg_plot, sweep_axes
