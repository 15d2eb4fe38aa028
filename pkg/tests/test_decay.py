import numpy as np
import pytest


def _smooth_factor(d, N, h, nu, lam=0.5):
    import tgrf
    model = tgrf.CovarianceModel(lam=lam, nu=nu, d=d)
    grid = tgrf.TorusGrid(d=d, n_per_axis=N, h=h)
    scheme = tgrf.SchemeDescriptor("expsmooth").scheme_for(grid, model)
    return tgrf.factorize(model, grid, scheme)


def test_default_window():
    import tgrf
    grid = tgrf.TorusGrid(d=1, n_per_axis=2**14, h=2**-10)
    assert tgrf.torus.default_window(grid) == (256, 4096)
    assert tgrf.torus.DecayFit.expected_exponent(1.0, 2) == -2.0


def test_sorted_scaled_eigenvalues():
    import tgrf
    factor = _smooth_factor(1, 256, 1 / 32, 1.0, lam=0.1)
    values = tgrf.torus.sorted_scaled_eigenvalues(factor)
    assert np.all(np.diff(values) <= 0)
    assert np.sum(values) == pytest.approx(factor.variance, rel=1e-12)


def test_degenerate_windows():
    import tgrf
    from tgrf.errors import DegenerateFitError
    factor = _smooth_factor(1, 1024, 1 / 128, 1.0, lam=0.1)
    with pytest.raises(DegenerateFitError):
        tgrf.torus.decay_fit(factor, (20, 150))
    with pytest.raises(DegenerateFitError):
        tgrf.torus.decay_fit(factor, (10, 1000))
    with pytest.raises(DegenerateFitError):
        tgrf.torus.decay_fit(factor, (0, 100))


def test_fit_requires_positive_definite_factor():
    import tgrf
    from tgrf.errors import NotPositiveDefiniteError
    model = tgrf.CovarianceModel(lam=0.5, nu=1.0)
    grid = tgrf.TorusGrid.from_gamma(1, 1.0, 2**-10)
    factor = tgrf.factorize(model, grid, tgrf.PeriodizationScheme.classical())
    with pytest.raises(NotPositiveDefiniteError):
        tgrf.torus.decay_fit(factor)


def test_fit_recovers_exact_power_law():
    import tgrf
    grid = tgrf.TorusGrid(d=1, n_per_axis=4096, h=1 / 1024)
    k = np.abs(grid.axis_offsets()).astype(float)
    eigs = (1 + k) ** -3.0
    factor = tgrf.torus.SpectralFactor(eigs, grid)
    fit = tgrf.torus.decay_fit(factor)
    assert fit.exponent == pytest.approx(-3.0, abs=0.05)
    assert fit.r_squared > 0.999


@pytest.mark.slow
@pytest.mark.parametrize("nu", [0.5, 1.0, 2.0])
def test_smooth_decay_exponent_in_one_dimension(nu):
    import tgrf
    factor = _smooth_factor(1, 2**14, 2**-10, nu)
    fit = tgrf.torus.decay_fit(factor)
    expected = tgrf.torus.DecayFit.expected_exponent(nu, 1)
    assert fit.exponent == pytest.approx(expected, rel=0.05)


@pytest.mark.slow
def test_smooth_decay_exponent_in_two_dimensions():
    import tgrf
    factor = _smooth_factor(2, 2**9, 2**-6, 1.0)
    fit = tgrf.torus.decay_fit(factor)
    assert fit.exponent == pytest.approx(-2.0, rel=0.075)


@pytest.mark.slow
def test_classical_decay_exponent_at_minimal_size():
    import tgrf
    model = tgrf.CovarianceModel(lam=0.5, nu=1.0)
    h = 2**-10
    result = tgrf.min_gamma(model, h, "classical")
    grid = tgrf.TorusGrid(d=1, n_per_axis=result.n_star, h=h)
    table, fit = tgrf.experiments.eig_decay_report(model, grid, tgrf.PeriodizationScheme.classical())
    assert fit.exponent == pytest.approx(-3.0, rel=0.07)
    assert list(table.columns) == ["j", "eigenvalue"]
    assert len(table) == grid.cells


def test_classical_prefactor_trend():
    import tgrf
    model = tgrf.CovarianceModel(lam=0.5, nu=1.0, d=1)
    h_list = [2**-6, 2**-7, 2**-8]
    table, slope, intercept = tgrf.experiments.classical_prefactor_trend(model, h_list, gamma=4)
    assert list(table.columns) == ["h", "gamma", "log_ratio_pow_nu", "prefactor"]
    assert list(table["h"]) == h_list
    np.testing.assert_allclose(table["gamma"], 4.0)
    np.testing.assert_allclose(table["log_ratio_pow_nu"], np.log(0.5 / np.array(h_list)))
    assert (table["prefactor"] > 0).all()
    assert np.isfinite(slope) and np.isfinite(intercept)
    _, slope, intercept = tgrf.experiments.classical_prefactor_trend(model, h_list[:1], gamma=4)
    assert np.isnan(slope) and np.isnan(intercept)


def test_eig_decay_report_writes_csv_and_summary(tmp_path):
    import json
    import pandas as pd
    import tgrf
    model = tgrf.CovarianceModel(lam=0.1, nu=1.0)
    grid = tgrf.TorusGrid(d=1, n_per_axis=1024, h=1 / 128)
    scheme = tgrf.SchemeDescriptor("expsmooth").scheme_for(grid, model)
    output = tmp_path / "reports" / "decay.csv"
    table, fit = tgrf.experiments.eig_decay_report(model, grid, scheme, output=output)
    written = pd.read_csv(output, float_precision="round_trip")
    assert list(written.columns) == ["j", "eigenvalue"]
    np.testing.assert_array_equal(written["eigenvalue"].to_numpy(), table["eigenvalue"].to_numpy())
    summary = json.loads(output.with_suffix(".json").read_text())
    assert summary["exponent"] == fit.exponent
    assert summary["expected_exponent"] == -3.0
    assert summary["grid"]["n_per_axis"] == 1024
