import numpy as np
import pytest


def _factor(kind, d=1):
    import tgrf
    model = tgrf.CovarianceModel(lam=0.5, nu=1.0, d=d)
    grid = tgrf.TorusGrid.from_gamma(d, 2.5, 1 / 8)
    scheme = tgrf.SchemeDescriptor(kind).scheme_for(grid, model)
    return tgrf.factorize(model, grid, scheme)


def test_factor_round_trip(tmp_path):
    import tgrf
    for kind in ("classical", "bspline", "expsmooth"):
        for d in (1, 2):
            factor = _factor(kind, d)
            path = tmp_path / f"{kind}-{d}.tgrf"
            tgrf.torus.save_factor(factor, path)
            assert tgrf.torus.payload_kind(path) == "factor"
            loaded = tgrf.torus.load_factor(path)
            np.testing.assert_array_equal(loaded.eigs, factor.eigs)
            assert loaded.grid == factor.grid
            assert loaded.scheme == factor.scheme
            assert loaded.model == factor.model
            assert loaded.checksum == factor.checksum


def test_factor_file_layout(tmp_path):
    import tgrf
    factor = _factor("classical")
    path = tmp_path / "f.tgrf"
    tgrf.torus.save_factor(factor, path)
    data = path.read_bytes()
    assert data[:4] == b"TGRF"
    container = tgrf.torus.container
    assert int.from_bytes(data[4:6], "little") == container.VERSION
    assert int.from_bytes(data[6:8], "little") == 1
    assert int.from_bytes(data[8:16], "little") == factor.grid.n_per_axis
    size = container.header_dtype.itemsize
    assert int.from_bytes(data[size - 2:size], "little") == container.FACTOR
    assert container.header_dtype.names[-1] == "payload"
    assert len(data) == size + 8 * factor.grid.cells
    np.testing.assert_array_equal(np.frombuffer(data[size:], dtype="<f8"), factor.eigs.ravel())


def test_corrupt_files(tmp_path):
    import tgrf
    from tgrf.errors import CorruptFileError
    factor = _factor("expsmooth")
    path = tmp_path / "f.tgrf"
    tgrf.torus.save_factor(factor, path)
    data = path.read_bytes()

    bad_magic = tmp_path / "magic.tgrf"
    bad_magic.write_bytes(b"XGRF" + data[4:])
    with pytest.raises(CorruptFileError):
        tgrf.torus.load_factor(bad_magic)

    truncated = tmp_path / "short.tgrf"
    truncated.write_bytes(data[:-8])
    with pytest.raises(CorruptFileError):
        tgrf.torus.load_factor(truncated)

    tiny = tmp_path / "tiny.tgrf"
    tiny.write_bytes(b"TGRF")
    with pytest.raises(CorruptFileError):
        tgrf.torus.load_factor(tiny)

    version = tmp_path / "version.tgrf"
    version.write_bytes(data[:4] + (7).to_bytes(2, "little") + data[6:])
    with pytest.raises(CorruptFileError):
        tgrf.torus.load_factor(version)


def test_samples_round_trip(tmp_path):
    import tgrf
    from tgrf.errors import CorruptFileError
    factor = _factor("expsmooth")
    batch = tgrf.draw(factor, tgrf.RngStream(3, 4), 7)
    path = tmp_path / "s.tgrf"
    tgrf.torus.save_samples(batch, path)
    assert tgrf.torus.payload_kind(path) == "samples"
    loaded = tgrf.torus.load_samples(path, factor=factor)
    np.testing.assert_array_equal(loaded.values, batch.values)
    np.testing.assert_array_equal(loaded.domain_index, batch.domain_index)
    assert (loaded.seed, loaded.stream_id) == (3, 4)
    assert loaded.factor_ref == factor.checksum
    assert loaded.clamped_mass == batch.clamped_mass
    bare = tgrf.torus.load_samples(path)
    assert bare.grid == factor.grid
    with pytest.raises(CorruptFileError):
        tgrf.torus.load_factor(path)
    factor_path = tmp_path / "f.tgrf"
    tgrf.torus.save_factor(factor, factor_path)
    with pytest.raises(CorruptFileError):
        tgrf.torus.load_samples(factor_path)
