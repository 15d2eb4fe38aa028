"""Exact sampling of periodized Gaussian fields by FFT

With μ_k the clamped eigenvalues (S_N ρ)_k and ξ_k = ξ¹_k + iξ²_k a complex
array of independent standard normals, the field

    Y = FFT( √(μ_k / (2γ)^d) · ξ_k )

has E[Y Yᴴ] = 2Σ^ext and E[Y Yᵀ] = 0, so Re Y and Im Y are two independent
exact realizations with covariance Σ^ext.  Each pair of realizations costs one
FFT.

"""

import logging
from dataclasses import dataclass, field

import numpy as np

from ..errors import NotPositiveDefiniteError
from ..utilities import setting

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """Independent realizations of a Gaussian field

    Parameters
    ----------
    values : ndarray
        Field values, shape (count, m); row i is realization i and column j is
        the grid point with offsets `domain_index[j]`.
    domain_index : ndarray
        Integer grid offsets n of the sampled points, shape (m, d).
    seed, stream_id : int
        The random stream used.
    factor_ref : str
        Checksum of the spectral factor used.
    clamped_mass : float
        Magnitude of negative eigenvalues clamped to zero before sampling.
    factor : SpectralFactor, optional
        The factor itself, when available.

    """
    values: np.ndarray
    domain_index: np.ndarray
    seed: int
    stream_id: int
    factor_ref: str
    clamped_mass: float = 0.0
    factor: object = field(default=None, repr=False)

    @property
    def count(self):
        return self.values.shape[0]

    @property
    def grid(self):
        return self.factor.grid if self.factor is not None else None

    def column_of(self, offsets):
        """Column index of the grid point with integer `offsets`"""
        offsets = np.atleast_1d(np.asarray(offsets, dtype=int))
        matches = np.nonzero(np.all(self.domain_index == offsets, axis=1))[0]
        if len(matches) == 0:
            raise KeyError(f"Grid point {tuple(offsets)} is not part of this batch")
        return int(matches[0])

    def column_names(self):
        return [":".join(str(int(v)) for v in n) for n in self.domain_index]

    def to_dataframe(self):
        import pandas as pd
        return pd.DataFrame(self.values, columns=self.column_names())

    def to_csv(self, file_name):
        """One row per realization; columns are named by ':'-joined grid offsets"""
        from ..utilities import format_float
        self.to_dataframe().to_csv(file_name, index=False, float_format=format_float)

    save = to_csv


def _check_factor(factor):
    if not factor.is_pd:
        raise NotPositiveDefiniteError(
            f"Factor has min/max eigenvalue ratio {factor.margin:.3e}, "
            f"below the tolerance -{factor.rel_tol:g}"
        )


def _amplitudes(factor):
    return np.sqrt(factor.clamped_eigs / factor.grid.volume)


def _field_pairs(factor, normals, pairs, chunk, selector, show_progress=False):
    """Yield (real, imaginary) realization blocks restricted by `selector`

    Each block holds at most `chunk` pairs.  For every pair the real parts of ξ
    are drawn first, then the imaginary parts, N^d variates each.

    """
    import scipy.fft
    from tqdm.auto import tqdm

    grid = factor.grid
    amplitudes = _amplitudes(factor)
    axes = tuple(range(1, grid.d + 1))
    starts = range(0, pairs, chunk)
    for start in tqdm(starts, disable=not show_progress, desc="Sampling", dynamic_ncols=True):
        size = min(chunk, pairs - start)
        xi = np.empty((size,) + grid.shape, dtype=complex)
        for i in range(size):
            xi[i].real = normals.normals(grid.shape)
            xi[i].imag = normals.normals(grid.shape)
        fields = scipy.fft.fftn(amplitudes * xi, axes=axes)
        fields = selector(fields)
        yield fields.real, fields.imag


def _domain_selector(grid):
    positions = np.ix_(*([grid.domain_axis_positions()] * grid.d))

    def select(fields):
        restricted = fields[(slice(None),) + positions]
        return restricted.reshape(fields.shape[0], -1)

    return select


def _full_selector(grid):
    def select(fields):
        return fields.reshape(fields.shape[0], -1)
    return select


def _all_offsets(grid):
    mesh = np.meshgrid(*([grid.axis_offsets()] * grid.d), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1).astype(np.int32)


def draw(factor, rng, count, restrict=True, chunk=None, show_progress=False):
    """Draw `count` independent realizations of the periodized field

    Parameters
    ----------
    factor : SpectralFactor
        Must pass the positive-semidefiniteness predicate; negative eigenvalues
        within tolerance are clamped to zero.
    rng : RngStream
    count : int
        Number of realizations.  Realizations come in (real, imaginary) pairs
        from one FFT; for odd `count` the last imaginary part is discarded.
    restrict : bool
        If True (the default), keep only the points of the sampling domain
        [-e0, e0]^d; otherwise return the full torus in FFT storage order.
    chunk : int, optional
        Pairs per batched FFT; defaults to the `sample_chunk` setting.

    Returns
    -------
    batch : SampleBatch
        Rows alternate between real and imaginary parts of successive pairs.

    Raises
    ------
    NotPositiveDefiniteError

    """
    _check_factor(factor)
    count = int(count)
    if count < 1:
        raise ValueError(f"Sample count must be positive; got {count}")
    grid = factor.grid
    chunk = int(chunk or setting("sample_chunk"))
    pairs = (count + 1) // 2
    if restrict:
        selector, domain_index = _domain_selector(grid), grid.domain_index()
    else:
        selector, domain_index = _full_selector(grid), _all_offsets(grid)

    values = np.empty((2 * pairs, len(domain_index)))
    row = 0
    for real, imag in _field_pairs(factor, rng.open(), pairs, chunk, selector, show_progress):
        size = real.shape[0]
        values[row:row + 2 * size:2] = real
        values[row + 1:row + 2 * size:2] = imag
        row += 2 * size
    logger.info("Drew %d realizations on %d points from factor %s", count, len(domain_index), factor.checksum)
    return SampleBatch(
        values=values[:count],
        domain_index=domain_index,
        seed=rng.seed,
        stream_id=rng.stream_id,
        factor_ref=factor.checksum,
        clamped_mass=factor.clamped_mass,
        factor=factor,
    )
