"""Settings file and per-user directories for configuration and sweep checkpoints"""

import functools
import os
import warnings
from pathlib import Path


DEFAULTS = {
    # Largest number of torus cells N**d that a single factorization may use
    "max_cells": 2**25,
    # Worker processes for sweeps; None means one per CPU
    "workers": None,
    # Realization pairs generated per batched FFT
    "sample_chunk": 64,
    "bessel_rel_tol": 1e-12,
    "pd_rel_tol": 1e-13,
}


def _config_file():
    return tgrf_directory("config") / "config.json"


def _load(path):
    import json
    if not path.exists():
        return {}
    with path.open("r") as f:
        return json.load(f)


def read_config(key=None, default=None):
    """Settings from `config.json` in the config directory

    With no `key`, the whole dictionary is returned; otherwise the value stored
    under `key`, or `default` if there is none.

    """
    config = _load(_config_file())
    return config if key is None else config.get(key, default)


def write_config(**kwargs):
    """Merge keyword settings into `config.json`

    For example `write_config(max_cells=2**27)` allows larger tori in minimal-γ
    searches, and `write_config(cache_directory="...")` moves sweep checkpoints.

    """
    import json
    path = _config_file()
    config = _load(path)
    config.update(**kwargs)
    with path.open("w") as f:
        json.dump(config, f, indent=4, separators=(",", ": "))


def setting(key):
    """Return the configured value of `key`, falling back to `DEFAULTS`"""
    if key not in DEFAULTS:
        raise KeyError(f"Unknown tgrf setting '{key}'; known settings are {sorted(DEFAULTS)}")
    return read_config(key, DEFAULTS[key])


def _usable(path):
    """Create `path` if needed; return it resolved when it is a writable directory"""
    path = Path(path).expanduser().resolve()
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError:
        return None
    return path if path.is_dir() and os.access(path, os.W_OK) else None


def _default_location(directory_type):
    import sys
    variable = f"TGRF{directory_type.upper()}DIR"
    if os.getenv(variable):
        return Path(os.environ[variable])
    if sys.platform.startswith(("linux", "freebsd")):
        base = os.environ.get(f"XDG_{directory_type.upper()}_HOME", Path.home() / f".{directory_type}")
        return Path(base) / "tgrf"
    return Path.home() / ".tgrf" / ("cache" if directory_type == "cache" else "")


def _temporary(directory_type):
    import atexit
    import shutil
    import tempfile
    path = Path(tempfile.mkdtemp(prefix=f"tgrf-{directory_type}-"))
    atexit.register(shutil.rmtree, path, ignore_errors=True)
    return path


@functools.lru_cache()
def tgrf_directory(directory_type, persistent=True):
    """Directory for settings ("config") or sweep checkpoints ("cache")

    The cache honours a `cache_directory` setting first.  Otherwise the
    `TGRFCONFIGDIR`/`TGRFCACHEDIR` environment variables are used, then the XDG
    locations on Linux and FreeBSD, then `~/.tgrf`.  When none is writable, or
    `persistent` is False, a temporary directory is used for the rest of the
    process, with a warning in the first case.  Results are cached; call
    `tgrf_directory.cache_clear()` after changing the environment.

    """
    if directory_type not in ("cache", "config"):
        raise ValueError(f"Can only find 'cache' or 'config' directories, not '{directory_type}'")
    if not persistent:
        return _temporary(directory_type)

    if directory_type == "cache":
        configured = read_config("cache_directory")
        if configured is not None:
            path = _usable(configured)
            if path is not None:
                return path
            warnings.warn(
                f"\nThe cache_directory setting {configured!r} is not a writable directory;"
                "\nfalling back to the default cache location."
            )

    candidate = _default_location(directory_type)
    path = _usable(candidate)
    if path is not None:
        return path
    path = _temporary(directory_type)
    warnings.warn(
        f"\nUsing the temporary {directory_type} directory {path} because {candidate} is not writable;"
        f"\nset TGRF{directory_type.upper()}DIR to keep settings and sweep checkpoints between sessions."
    )
    return path
