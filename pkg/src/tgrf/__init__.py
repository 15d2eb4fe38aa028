# SPDX-FileCopyrightText: 2026-present tgrf developers
#
# SPDX-License-Identifier: MIT

from .__about__ import __version__

from . import errors
from . import utilities
from . import specfun
from . import covariance
from . import cutoff
from . import torus
from . import sampler
from . import experiments

from .covariance import CovarianceModel
from .torus import TorusGrid, PeriodizationScheme, SchemeDescriptor, factorize
from .sampler import RngStream, draw
from .experiments import min_gamma, SweepConfig


def load(location):
    """Load a stored spectral factor, sample batch, or sweep configuration

    Parameters
    ----------
    location : str or pathlib.Path
        A TGRF container (either payload kind) or a JSON sweep configuration.

    """
    from pathlib import Path
    from .torus import load_factor, load_samples, payload_kind
    from .errors import CorruptFileError

    path = Path(location).expanduser().resolve()
    if path.suffix == ".json":
        return SweepConfig.from_json_file(path)
    try:
        kind = payload_kind(path)
    except CorruptFileError as e:
        raise ValueError(
            f"\nCannot load '{location}'. "
            "\nExpected a TGRF container written by `save_factor` or `save_samples`,"
            " or a JSON sweep configuration."
        ) from e
    if kind == "factor":
        return load_factor(path)
    elif kind == "samples":
        return load_samples(path)
    else:
        raise ValueError(f"\nUnknown payload kind in '{location}'.")
