import numpy as np
import pytest


def _model(lam=0.5, nu=1.0, d=1):
    import tgrf
    return tgrf.CovarianceModel(lam=lam, nu=nu, d=d)


def test_grid_geometry():
    import tgrf
    grid = tgrf.TorusGrid(d=2, n_per_axis=8, h=0.25)
    assert grid.gamma == 1.0
    assert grid.shape == (8, 8)
    assert grid.cells == 64
    assert grid.volume == 4.0
    np.testing.assert_array_equal(grid.axis_offsets(), [0, 1, 2, 3, -4, -3, -2, -1])
    assert grid.points().shape == (8, 8, 2)
    assert grid.domain_half_count == 2
    assert grid.domain_count == 25
    index = grid.domain_index()
    assert index.shape == (25, 2)
    assert index.dtype == np.int32
    np.testing.assert_array_equal(grid.domain_axis_positions(), [6, 7, 0, 1, 2])


def test_grid_from_gamma_rounds_up():
    import tgrf
    grid = tgrf.TorusGrid.from_gamma(1, 1.3, 0.1)
    assert grid.n_per_axis == 26
    assert grid.gamma >= 1.3 - 1e-12
    assert tgrf.TorusGrid.from_gamma(1, 1.0, 2**-10).n_per_axis == 2048


def test_grid_validation():
    import tgrf
    from tgrf.errors import ConstraintError, DomainError
    with pytest.raises(DomainError):
        tgrf.TorusGrid(d=1, n_per_axis=7, h=0.5)
    with pytest.raises(DomainError):
        tgrf.TorusGrid(d=4, n_per_axis=8, h=0.5)
    with pytest.raises(ConstraintError):
        tgrf.TorusGrid(d=1, n_per_axis=8, h=0.2)


def test_classical_exact_embedding():
    import tgrf
    for d, h in ((1, 1 / 64), (2, 1 / 16)):
        model = _model(d=d)
        grid = tgrf.TorusGrid.from_gamma(d, 1.5, h)
        cov = tgrf.torus.periodized_cov_on_grid(model, grid, tgrf.PeriodizationScheme.classical())
        points = grid.points()
        inside = np.all(np.abs(points) <= 1 + 1e-12, axis=-1)
        np.testing.assert_allclose(cov[inside], model.rho(points[inside]), atol=1e-14)


def test_smooth_exact_embedding():
    import tgrf
    for kind in ("expsmooth", "bspline"):
        for d, h in ((1, 1 / 64), (2, 1 / 16)):
            model = _model(d=d)
            grid = tgrf.TorusGrid.from_gamma(d, 2.5, h)
            scheme = tgrf.SchemeDescriptor(kind).scheme_for(grid, model)
            cov = tgrf.torus.periodized_cov_on_grid(model, grid, scheme)
            points = grid.points()
            inside = np.all(np.abs(points) <= 1 + 1e-12, axis=-1)
            np.testing.assert_allclose(cov[inside], model.rho(points[inside]), atol=1e-14)


def test_smooth_periodization_matches_wide_sum():
    import tgrf
    model = _model()
    grid = tgrf.TorusGrid.from_gamma(1, 1.25, 1 / 16)
    cutoff = tgrf.cutoff.CutoffSpec.expsmooth(2 * grid.gamma - 1, 1.0)
    scheme = tgrf.PeriodizationScheme.smooth(cutoff)
    cov = tgrf.torus.periodized_cov_on_grid(model, grid, scheme)
    for n in (0, 3, 15, -16, -7):
        x = n * grid.h
        shifted = x + 2 * grid.gamma * np.arange(-10, 11)
        expected = np.sum(model.rho(shifted) * tgrf.cutoff.phi_univariate(cutoff, shifted))
        assert cov[n % grid.N] == pytest.approx(expected, abs=1e-14)


def test_periodized_covariance_is_even():
    import tgrf
    model = _model(d=2, nu=1.7)
    grid = tgrf.TorusGrid.from_gamma(2, 1.75, 1 / 8)
    scheme = tgrf.SchemeDescriptor("expsmooth").scheme_for(grid, model)
    cov = tgrf.torus.periodized_cov_on_grid(model, grid, scheme)
    reflected = np.roll(np.flip(cov, axis=(0, 1)), 1, axis=(0, 1))
    np.testing.assert_allclose(cov, reflected, atol=1e-15)


def test_scheme_violations():
    import tgrf
    from tgrf.errors import ConstraintError
    model = _model()
    grid = tgrf.TorusGrid.from_gamma(1, 1.5, 1 / 16)
    too_wide = tgrf.PeriodizationScheme.smooth(tgrf.cutoff.CutoffSpec.expsmooth(2.5, 1.0))
    assert too_wide.violations(grid)
    with pytest.raises(ConstraintError):
        tgrf.torus.periodized_cov_on_grid(model, grid, too_wide)
    too_narrow = tgrf.PeriodizationScheme.smooth(tgrf.cutoff.CutoffSpec.expsmooth(1.5, 0.5))
    assert too_narrow.violations(grid)
    assert not tgrf.PeriodizationScheme.classical().violations(grid)
    with pytest.raises(ConstraintError):
        tgrf.PeriodizationScheme.smooth(tgrf.cutoff.CutoffSpec.classical())


def test_shift_set_covers_support():
    import tgrf
    grid = tgrf.TorusGrid.from_gamma(2, 2.0, 1 / 4)
    scheme = tgrf.PeriodizationScheme.smooth(tgrf.cutoff.CutoffSpec.expsmooth(2 * 2.0 - np.sqrt(2), np.sqrt(2)))
    shifts = set(scheme.shifts(grid))
    assert (0, 0) in shifts
    assert {(1, 0), (-1, 0), (0, 1), (0, -1)} <= shifts
    assert all(max(abs(s) for s in n) <= 1 for n in shifts)
    assert tgrf.PeriodizationScheme.classical().shifts(grid) == [(0, 0)]


def test_scheme_descriptor_defaults():
    import tgrf
    model = _model(nu=1.0)
    grid = tgrf.TorusGrid.from_gamma(1, 2.0, 1 / 16)
    scheme = tgrf.SchemeDescriptor("bspline").scheme_for(grid, model)
    assert scheme.cutoff.kappa == pytest.approx(3.0)
    assert scheme.cutoff.p == 2
    scheme = tgrf.SchemeDescriptor("expsmooth").scheme_for(grid, model)
    assert scheme.cutoff.inner_radius == pytest.approx(1.0)
    assert scheme.tag == "expsmooth"
    descriptor = tgrf.SchemeDescriptor.from_dict({"kind": "bspline", "p": 3})
    assert tgrf.SchemeDescriptor.from_dict(descriptor.to_dict()) == descriptor


def test_min_feasible_n():
    import tgrf
    model = _model()
    assert tgrf.SchemeDescriptor("classical").min_feasible_n(1, 1 / 64) == 128
    n = tgrf.SchemeDescriptor("expsmooth").min_feasible_n(1, 1 / 64, model=model)
    assert n == 130
    n = tgrf.SchemeDescriptor("bspline").min_feasible_n(2, 1 / 16, model=_model(d=2))
    grid = tgrf.TorusGrid(d=2, n_per_axis=n, h=1 / 16)
    assert grid.gamma >= 1.5 * np.sqrt(2)
    assert not tgrf.SchemeDescriptor("bspline").is_feasible(grid.with_n(n - 2), _model(d=2))


def test_bounds_classical():
    import tgrf
    model = _model()
    h = 2**-10
    bound = tgrf.torus.sufficient_gamma_classical(model, h)
    assert bound.in_regime
    assert bound.value == pytest.approx(0.5 * (1 + np.log(0.5 / h)))
    finer = tgrf.torus.sufficient_gamma_classical(model, h / 2)
    assert finer.value - bound.value == pytest.approx(0.5 * np.log(2))
    with pytest.warns(UserWarning):
        out = tgrf.torus.sufficient_gamma_classical(_model(nu=0.25), h)
    assert not out.in_regime
    assert out.violations


def test_bounds_smooth():
    import tgrf
    model = tgrf.CovarianceModel(lam=1.0, nu=1.0)
    assert tgrf.torus.sufficient_kappa_smooth(model).value == pytest.approx(2.0)
    small = tgrf.CovarianceModel(lam=1.0, nu=1e-4)
    assert tgrf.torus.sufficient_kappa_smooth(small).value == pytest.approx(1 + 100)
    tiny = tgrf.CovarianceModel(lam=0.01, nu=1.0)
    assert tgrf.torus.sufficient_kappa_smooth(tiny).value == 1.0
    assert tgrf.torus.sufficient_gamma_smooth(model).value == pytest.approx(1.5)
    assert tgrf.torus.sufficient_gamma_smooth(tiny, kind="bspline").value == pytest.approx(1.5)


def test_smooth_kappa_floor_depends_on_cutoff_kind():
    import tgrf
    plane = tgrf.CovarianceModel(lam=0.01, nu=1.0, d=2)
    kappa = tgrf.torus.sufficient_kappa_smooth
    assert kappa(plane).value == pytest.approx(np.sqrt(2))
    assert kappa(plane, kind="bspline").value == pytest.approx(2 * np.sqrt(2))
    assert tgrf.torus.sufficient_gamma_smooth(plane, kind="bspline").value == pytest.approx(1.5 * np.sqrt(2))
    line = tgrf.CovarianceModel(lam=0.01, nu=1.0)
    assert kappa(line, e0=0.1).value == 1.0
    assert kappa(line, e0=0.1, kind="bspline").value == 1.0
    assert kappa(line, e0=0.4, kind="bspline").value == pytest.approx(1.6)
    assert tgrf.torus.sufficient_gamma_smooth(line, e0=0.1).value == pytest.approx(0.6)
