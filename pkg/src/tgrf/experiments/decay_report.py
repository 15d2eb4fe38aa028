"""Eigenvalue-decay reports"""

import logging

import numpy as np
import pandas as pd

from ..torus import factorize, decay_fit, sorted_scaled_eigenvalues, default_window, DecayFit
from ..utilities import format_float

logger = logging.getLogger(__name__)


def eig_decay_report(model, grid, scheme, window=None, output=None):
    """Sorted scaled eigenvalues and their fitted decay exponent

    Parameters
    ----------
    model : CovarianceModel
    grid : TorusGrid
    scheme : PeriodizationScheme
    window : (int, int), optional
        Index window of the fit; defaults to [N^d/64, N^d/4].
    output : str or pathlib.Path, optional
        If given, the eigenvalues are written to this CSV file and the fit to a
        JSON file with the same stem.

    Returns
    -------
    table : pandas.DataFrame
        Columns `j` (one-based rank) and `eigenvalue`.
    fit : DecayFit

    Raises
    ------
    NotPositiveDefiniteError, DegenerateFitError
        As `decay_fit`.

    """
    factor = factorize(model, grid, scheme)
    fit = decay_fit(factor, window)
    values = sorted_scaled_eigenvalues(factor)
    table = pd.DataFrame({"j": np.arange(1, len(values) + 1), "eigenvalue": values})
    logger.info(
        "Decay exponent %.4f (expected %.4f) over j ∈ [%d, %d]",
        fit.exponent, DecayFit.expected_exponent(model.nu, model.d), fit.j_min, fit.j_max,
    )
    if output is not None:
        write_report(table, fit, output, model=model, grid=grid, scheme=scheme)
    return table, fit


def write_report(table, fit, output, model=None, grid=None, scheme=None):
    import json
    from pathlib import Path
    path = Path(output).expanduser().resolve()
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False, float_format=format_float)
    summary = fit.to_dict()
    if model is not None:
        summary["expected_exponent"] = DecayFit.expected_exponent(model.nu, model.d)
        summary["model"] = model.to_dict()
    if grid is not None:
        summary["grid"] = grid.to_dict()
    if scheme is not None:
        summary["scheme"] = scheme.to_dict()
    with path.with_suffix(".json").open("w") as f:
        json.dump(summary, f, indent=4, separators=(",", ": "))


def classical_prefactor_trend(model, h_list, gamma=None, window=None):
    """Decay prefactor of the classical scheme across grid spacings

    For each h the classical factor is built (on the torus of half-width `gamma`,
    or at its minimal positive semidefinite size when `gamma` is None), and the
    sorted eigenvalues are fitted with the exponent held at -(1 + 2ν/d).  The
    resulting prefactors are regressed on (log(λ/h))^ν.

    Returns
    -------
    table : pandas.DataFrame
        Columns `h`, `gamma`, `log_ratio_pow_nu`, `prefactor`.
    slope, intercept : float
        Linear fit of `prefactor` against `log_ratio_pow_nu`.

    """
    from ..torus import TorusGrid, PeriodizationScheme
    from .min_gamma import min_gamma
    scheme = PeriodizationScheme.classical()
    exponent = DecayFit.expected_exponent(model.nu, model.d)
    rows = []
    for h in h_list:
        if gamma is None:
            n = min_gamma(model, h, "classical").n_star
            grid = TorusGrid(d=model.d, n_per_axis=n, h=h)
        else:
            grid = TorusGrid.from_gamma(model.d, gamma, h)
        factor = factorize(model, grid, scheme)
        j_min, j_max = window if window is not None else default_window(grid)
        values = sorted_scaled_eigenvalues(factor)
        j = np.arange(j_min, j_max + 1)
        y = values[j - 1]
        j, y = j[y > 0], y[y > 0]
        log_prefactor = np.mean(np.log(y) - exponent * np.log(j))
        rows.append({
            "h": h,
            "gamma": grid.gamma,
            "log_ratio_pow_nu": np.log(model.lam / h) ** model.nu,
            "prefactor": float(np.exp(log_prefactor)),
        })
    table = pd.DataFrame(rows)
    if len(table) >= 2:
        slope, intercept = np.polyfit(table["log_ratio_pow_nu"], table["prefactor"], 1)
    else:
        slope, intercept = np.nan, np.nan
    return table, float(slope), float(intercept)
