import pytest


@pytest.fixture(autouse=True)
def tgrf_directories(tmp_path_factory, monkeypatch):
    """Keep configuration and sweep checkpoints out of the user's home"""
    from tgrf.utilities import tgrf_directory
    root = tmp_path_factory.mktemp("tgrf-home")
    monkeypatch.setenv("TGRFCONFIGDIR", str(root / "config"))
    monkeypatch.setenv("TGRFCACHEDIR", str(root / "cache"))
    tgrf_directory.cache_clear()
    yield root
    tgrf_directory.cache_clear()
