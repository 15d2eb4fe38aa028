import math

import numpy as np
import pytest


def test_rho_examples():
    import tgrf
    model = tgrf.CovarianceModel(lam=1.0, nu=0.5)
    assert model.rho(0.0) == 1.0
    assert model.rho(1.0) == pytest.approx(math.exp(-1), rel=1e-13)
    assert model.rho(-1.0) == model.rho(1.0)
    model = tgrf.CovarianceModel(lam=1.0, nu=1.5)
    assert model.rho(1.0) == pytest.approx((1 + math.sqrt(3)) * math.exp(-math.sqrt(3)), rel=1e-13)
    assert model.rho(1.0) == pytest.approx(0.4833577245, rel=1e-9)


def test_rho_at_origin_is_exact():
    import tgrf
    for nu in (2**-7, 0.5, 1.0, 7.3, 60.0):
        for d in (1, 2, 3):
            model = tgrf.CovarianceModel(lam=0.5, nu=nu, d=d)
            assert model.rho(np.zeros(d)) == 1.0


def test_rho_is_bounded_by_one():
    import tgrf
    r = np.concatenate([[0, 1e-200, 1e-12, 1e-9], np.geomspace(1e-6, 10, 200)])
    for nu in (2**-7, 0.3, 1.0, 4.0, 25.0):
        values = tgrf.CovarianceModel(lam=0.5, nu=nu).rho_radial(r)
        assert np.all(values <= 1.0)
        assert np.all(values >= 0.0)


def test_rho_radial_in_higher_dimensions():
    import tgrf
    rng = np.random.default_rng(42)
    for d in (2, 3):
        model = tgrf.CovarianceModel(lam=0.7, nu=1.3, d=d)
        x = rng.normal(size=(25, d))
        q, _ = np.linalg.qr(rng.normal(size=(d, d)))
        np.testing.assert_allclose(model.rho(x), model.rho(-x), atol=1e-14)
        np.testing.assert_allclose(model.rho(x), model.rho(x @ q.T), atol=1e-14)


def test_rho_decreasing():
    import tgrf
    rng = np.random.default_rng(11)
    for _ in range(100):
        lam, nu = rng.uniform(0.1, 2.0), rng.uniform(0.05, 10.0)
        model = tgrf.CovarianceModel(lam=lam, nu=nu)
        values = model.rho_radial(lam * np.linspace(0.05, 3.0, 20))
        assert np.all(np.diff(values) < 0), (lam, nu)


def test_spectral_density_examples():
    import tgrf
    model = tgrf.CovarianceModel(lam=1.0, nu=0.5)
    assert model.spectral_density(0.0) == pytest.approx(2.0, rel=1e-14)
    assert model.prefactor == pytest.approx(2.0, rel=1e-14)
    assert model.spectral_density(3.7) == model.spectral_density(-3.7)
    ratio = model.spectral_density(1e3) / model.spectral_density(1e2)
    assert ratio == pytest.approx(1e-2, rel=1e-3)


def test_spectral_density_positive():
    import tgrf
    rng = np.random.default_rng(5)
    for d in (1, 2, 3):
        model = tgrf.CovarianceModel(lam=0.5, nu=2.5, d=d)
        omega = rng.normal(scale=100, size=(500, d))
        assert np.all(model.spectral_density(omega) > 0)


def test_plancherel():
    import tgrf
    from scipy.integrate import quad
    for nu in (0.5, 1.5, 3.0):
        model = tgrf.CovarianceModel(lam=0.5, nu=nu)
        integral, _ = quad(model.spectral_density, 0, np.inf, epsabs=1e-12, epsrel=1e-12, limit=500)
        assert 2 * integral / (2 * np.pi) == pytest.approx(1.0, abs=1e-6)


def test_scaling_check():
    import tgrf
    model = tgrf.CovarianceModel(lam=0.5, nu=1.0)
    a, b = model.rho_scaling_check(0.3, 2.0)
    assert a == pytest.approx(b, rel=1e-14)
    a, b = tgrf.covariance.rho_scaling_check(tgrf.CovarianceModel(lam=1.0, nu=0.5), 1.0, 3.0)
    assert a == pytest.approx(math.exp(-1), rel=1e-13)
    assert b == pytest.approx(math.exp(-1), rel=1e-13)
    a, b = tgrf.CovarianceModel(lam=2.0, nu=2.0).rho_scaling_check(0.0, 7.0)
    assert a == b == 1.0


def test_model_validation():
    import tgrf
    from tgrf.errors import DomainError
    with pytest.raises(DomainError):
        tgrf.CovarianceModel(lam=0.0, nu=1.0)
    with pytest.raises(DomainError):
        tgrf.CovarianceModel(lam=1.0, nu=0.0)
    with pytest.raises(DomainError):
        tgrf.CovarianceModel(lam=1.0, nu=61.0)
    with pytest.raises(DomainError):
        tgrf.CovarianceModel(lam=1.0, nu=1.0, d=4)
    with pytest.raises(DomainError):
        tgrf.CovarianceModel(lam=1.0, nu=1.0, d=2).rho(np.zeros(3))


def test_model_dict_round_trip():
    import tgrf
    model = tgrf.CovarianceModel(lam=0.25, nu=2**-7, d=3)
    assert tgrf.CovarianceModel.from_dict(model.to_dict()) == model
