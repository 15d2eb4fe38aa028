"""Statistical checks on sampled fields"""

import logging

import numpy as np

logger = logging.getLogger(__name__)


def empirical_covariance(batch, lag_pairs):
    """Sample covariance across realizations with jackknife standard errors

    Parameters
    ----------
    batch : SampleBatch or ndarray
        Realizations in rows.
    lag_pairs : sequence of (int, int)
        Column pairs (i, j) whose covariance is estimated.

    Returns
    -------
    estimates, standard_errors : ndarray
        Unbiased covariance of columns i and j for each pair, and the
        leave-one-out jackknife standard error of that estimate.

    """
    values = np.asarray(getattr(batch, "values", batch), dtype=float)
    n = values.shape[0]
    if n < 2:
        raise ValueError(f"Covariance needs at least two realizations; got {n}")
    centered = values - np.mean(values, axis=0)
    estimates, errors = [], []
    for i, j in lag_pairs:
        products = centered[:, i] * centered[:, j]
        total = np.sum(products)
        estimates.append(total / (n - 1))
        if n < 3:
            errors.append(np.nan)
            continue
        # leave-one-out co-moments, each renormalized by its own n-2
        leave_one_out = (total - products * n / (n - 1)) / (n - 2)
        spread = np.sum((leave_one_out - np.mean(leave_one_out)) ** 2)
        errors.append(np.sqrt((n - 1) / n * spread))
    return np.array(estimates), np.array(errors)


def lag_columns(batch, lags, axis=0):
    """Column pairs (origin, origin + lag·e_axis) for lags given in grid steps"""
    d = batch.domain_index.shape[1]
    origin = batch.column_of(np.zeros(d, dtype=int))
    pairs = []
    for lag in lags:
        offsets = np.zeros(d, dtype=int)
        offsets[axis] = int(lag)
        pairs.append((origin, batch.column_of(offsets)))
    return pairs


def _probe_positions(grid, probes):
    """`probes` distinct domain points spread evenly through the domain index"""
    count = grid.domain_count
    columns = np.unique(np.linspace(0, count - 1, min(probes, count)).round().astype(int))
    return columns


def half_sample_independence_check(factor, rng, count, probes=20):
    """Largest |correlation| between paired real- and imaginary-part realizations

    Both members of each pair come from the same complex draw; under exact
    sampling they are independent, so the correlation at every probe point is
    close to zero, within about 4/√count.

    """
    from .draw import _check_factor, _field_pairs, _domain_selector
    from ..utilities import setting
    _check_factor(factor)
    grid = factor.grid
    columns = _probe_positions(grid, probes)
    select = _domain_selector(grid)
    real_parts, imaginary_parts = [], []
    for real, imag in _field_pairs(factor, rng.open(), int(count), int(setting("sample_chunk")), select):
        real_parts.append(real[:, columns])
        imaginary_parts.append(imag[:, columns])
    real = np.concatenate(real_parts)
    imag = np.concatenate(imaginary_parts)
    correlations = [np.corrcoef(real[:, c], imag[:, c])[0, 1] for c in range(len(columns))]
    return float(np.max(np.abs(correlations)))


def marginal_normality_check(factor, rng, count=10_000, probes=3, alpha=0.01):
    """Kolmogorov–Smirnov tests of standardized samples at a few probe points

    Returns
    -------
    report : dict
        `statistics` and `pvalues` per probe point, and `passed`, which is True
        when at least two thirds of the probes (two of three by default) are
        above the `alpha` level.

    """
    from scipy.stats import kstest
    from .draw import draw
    batch = draw(factor, rng, count)
    columns = _probe_positions(factor.grid, probes)
    scale = np.sqrt(factor.variance)
    statistics, pvalues = [], []
    for c in columns:
        result = kstest(batch.values[:, c] / scale, "norm")
        statistics.append(float(result.statistic))
        pvalues.append(float(result.pvalue))
    passes = sum(p > alpha for p in pvalues)
    return {
        "columns": [int(c) for c in columns],
        "statistics": statistics,
        "pvalues": pvalues,
        "passed": bool(passes >= int(np.ceil(2 * len(columns) / 3))),
    }


def validation_report(factor, count, seed=0, stream_id=0, lags=None):
    """JSON-ready statistical report on samples drawn from `factor`

    Covariance is estimated at the given lags along the first axis (in grid
    steps; by default 0, 1, and 10 steps plus a quarter and a half of the
    sampling width, where those fit inside the domain) and compared with ρ^ext, which is what exact
    sampling must reproduce.

    """
    from .rng import RngStream
    from .draw import draw
    grid = factor.grid
    m0 = grid.domain_half_count
    if lags is None:
        lags = [0, 1, 10, int(round(0.5 * grid.e0 / grid.h)), m0]
    lags = sorted({int(lag) for lag in lags if 0 <= lag <= m0})

    batch = draw(factor, RngStream(seed, stream_id), count)
    estimates, errors = empirical_covariance(batch, lag_columns(batch, lags))
    target = factor.covariance_on_grid()
    rows = []
    for lag, estimate, error in zip(lags, estimates, errors):
        index = (lag,) + (0,) * (grid.d - 1)
        expected = float(target[index])
        rows.append({
            "lag": lag * grid.h,
            "estimate": float(estimate),
            "standard_error": float(error),
            "expected": expected,
            "z_score": float((estimate - expected) / error) if error > 0 else 0.0,
        })
        if factor.model is not None:
            rows[-1]["matern"] = float(factor.model.rho_radial(lag * grid.h))

    independence = half_sample_independence_check(factor, RngStream(seed, stream_id + 1), count)
    normality = marginal_normality_check(factor, RngStream(seed, stream_id + 2), count)
    report = {
        "factor": factor.checksum,
        "count": int(count),
        "seed": int(seed),
        "stream": int(stream_id),
        "clamped_mass": factor.clamped_mass,
        "lags": rows,
        "half_sample_max_abs_correlation": independence,
        "half_sample_threshold": 4 / np.sqrt(count),
        "normality": normality,
    }
    report["passed"] = bool(
        all(abs(r["z_score"]) <= 3 for r in rows)
        and independence <= report["half_sample_threshold"]
        and normality["passed"]
    )
    logger.info("Validation of %s: %s", factor.checksum, "passed" if report["passed"] else "FAILED")
    return report
