"""The TGRF binary container for spectral factors and sample batches

Every file starts with a fixed little-endian header,

    magic "TGRF", version u16, d u16, N u64, e0 f8, γ f8, λ f8, ν f8,
    scheme tag u16, p i8, κ f8, r0 f8, payload kind u16

followed by either

  * a factor payload: N^d little-endian f8 eigenvalues in row-major k order
    (FFT storage order along every axis), or
  * a samples payload: a second header (count u8, m u8, seed u8, stream u8,
    clamped mass f8, 32-character factor checksum), an (m, d) i4 table of
    grid offsets n, and a (count, m) f8 array of field values.

Unused cutoff parameters are stored as p = -1 and κ = r0 = NaN.
The trailing payload kind (1 for a factor, 2 for samples) lets one reader
tell the two file types apart.

"""

import numpy as np

from ..errors import CorruptFileError

MAGIC = b"TGRF"
VERSION = 2

FACTOR = 1
SAMPLES = 2

SCHEME_TAGS = {"classical": 0, "bspline": 1, "expsmooth": 2}

header_dtype = np.dtype([
    ("magic", "S4"),
    ("version", "<u2"),
    ("d", "<u2"),
    ("n_per_axis", "<u8"),
    ("e0", "<f8"),
    ("gamma", "<f8"),
    ("lam", "<f8"),
    ("nu", "<f8"),
    ("scheme", "<u2"),
    ("p", "<i8"),
    ("kappa", "<f8"),
    ("inner_radius", "<f8"),
    ("payload", "<u2"),
])

samples_dtype = np.dtype([
    ("count", "<u8"),
    ("m", "<u8"),
    ("seed", "<u8"),
    ("stream", "<u8"),
    ("clamped_mass", "<f8"),
    ("factor_ref", "S32"),
])


def _header(factor, payload):
    header = np.zeros((), dtype=header_dtype)
    grid, scheme, model = factor.grid, factor.scheme, factor.model
    header["magic"] = MAGIC
    header["version"] = VERSION
    header["payload"] = payload
    header["d"] = grid.d
    header["n_per_axis"] = grid.n_per_axis
    header["e0"] = grid.e0
    header["gamma"] = grid.gamma
    header["lam"] = model.lam if model is not None else np.nan
    header["nu"] = model.nu if model is not None else np.nan
    cutoff = scheme.cutoff if scheme is not None else None
    header["scheme"] = SCHEME_TAGS[cutoff.kind.value] if cutoff is not None else SCHEME_TAGS["classical"]
    header["p"] = cutoff.p if cutoff is not None and cutoff.p is not None else -1
    header["kappa"] = cutoff.kappa if cutoff is not None and cutoff.kappa is not None else np.nan
    header["inner_radius"] = (
        cutoff.inner_radius if cutoff is not None and cutoff.inner_radius is not None else np.nan
    )
    return header


def read_header(buffer):
    """Parse the common header from the start of `buffer`"""
    if len(buffer) < header_dtype.itemsize:
        raise CorruptFileError("File is too short to hold a TGRF header")
    header = np.frombuffer(buffer, dtype=header_dtype, count=1)[0]
    if header["magic"] != MAGIC:
        raise CorruptFileError(f"Not a TGRF file (magic {header['magic']!r})")
    if header["version"] != VERSION:
        raise CorruptFileError(f"Unsupported TGRF version {header['version']}; expected {VERSION}")
    return header


def _factor_from_header(header, eigs):
    from ..covariance import CovarianceModel
    from ..cutoff import CutoffSpec, CutoffKind
    from .grid import TorusGrid
    from .periodization import PeriodizationScheme
    from .spectral import SpectralFactor

    d, N = int(header["d"]), int(header["n_per_axis"])
    grid = TorusGrid(d=d, n_per_axis=N, h=2 * float(header["gamma"]) / N, e0=float(header["e0"]))
    model = None
    if np.isfinite(header["lam"]) and np.isfinite(header["nu"]):
        model = CovarianceModel(lam=float(header["lam"]), nu=float(header["nu"]), d=d)
    tags = {v: k for k, v in SCHEME_TAGS.items()}
    try:
        kind = CutoffKind(tags[int(header["scheme"])])
    except KeyError as e:
        raise CorruptFileError(f"Unknown scheme tag {header['scheme']}") from e
    if kind is CutoffKind.CLASSICAL:
        scheme = PeriodizationScheme.classical()
    elif kind is CutoffKind.BSPLINE:
        scheme = PeriodizationScheme.smooth(CutoffSpec.bspline(float(header["kappa"]), int(header["p"])))
    else:
        scheme = PeriodizationScheme.smooth(
            CutoffSpec.expsmooth(float(header["kappa"]), float(header["inner_radius"]))
        )
    return SpectralFactor(eigs.reshape(grid.shape), grid, scheme=scheme, model=model)


def save_factor(factor, file_name):
    """Write `factor` to `file_name` in the TGRF container format"""
    header = _header(factor, FACTOR)
    with open(file_name, "wb") as f:
        f.write(header.tobytes())
        f.write(np.ascontiguousarray(factor.eigs, dtype="<f8").tobytes())


def load_factor(file_name):
    """Read a `SpectralFactor` written by `save_factor`"""
    with open(file_name, "rb") as f:
        buffer = f.read()
    header = read_header(buffer)
    if header["payload"] != FACTOR:
        raise CorruptFileError(f"'{file_name}' holds samples, not a spectral factor")
    cells = int(header["n_per_axis"]) ** int(header["d"])
    offset = header_dtype.itemsize
    if len(buffer) != offset + 8 * cells:
        raise CorruptFileError(f"'{file_name}' should hold {cells} eigenvalues after its header")
    eigs = np.frombuffer(buffer, dtype="<f8", count=cells, offset=offset).astype(float)
    return _factor_from_header(header, eigs)


def save_samples(batch, file_name):
    """Write a `SampleBatch` to `file_name` in the TGRF container format"""
    header = _header(batch.factor, SAMPLES)
    sub = np.zeros((), dtype=samples_dtype)
    sub["count"] = batch.count
    sub["m"] = batch.values.shape[1]
    sub["seed"] = batch.seed
    sub["stream"] = batch.stream_id
    sub["clamped_mass"] = batch.clamped_mass
    sub["factor_ref"] = batch.factor_ref.encode("ascii")
    with open(file_name, "wb") as f:
        f.write(header.tobytes())
        f.write(sub.tobytes())
        f.write(np.ascontiguousarray(batch.domain_index, dtype="<i4").tobytes())
        f.write(np.ascontiguousarray(batch.values, dtype="<f8").tobytes())


def load_samples(file_name, factor=None):
    """Read a `SampleBatch` written by `save_samples`

    The spectral factor itself is not stored with the samples; pass it as
    `factor` to attach it, otherwise only its geometry is reconstructed (with
    zero eigenvalues) from the header.

    """
    from ..sampler import SampleBatch
    with open(file_name, "rb") as f:
        buffer = f.read()
    header = read_header(buffer)
    if header["payload"] != SAMPLES:
        raise CorruptFileError(f"'{file_name}' holds a spectral factor, not samples")
    offset = header_dtype.itemsize
    sub = np.frombuffer(buffer, dtype=samples_dtype, count=1, offset=offset)[0]
    offset += samples_dtype.itemsize
    d = int(header["d"])
    count, m = int(sub["count"]), int(sub["m"])
    if len(buffer) != offset + 4 * m * d + 8 * count * m:
        raise CorruptFileError(f"'{file_name}' is truncated or has trailing data")
    domain_index = np.frombuffer(buffer, dtype="<i4", count=m * d, offset=offset).reshape(m, d).astype(np.int32)
    offset += 4 * m * d
    values = np.frombuffer(buffer, dtype="<f8", count=count * m, offset=offset).reshape(count, m).astype(float)
    if factor is None:
        N = int(header["n_per_axis"])
        factor = _factor_from_header(header, np.zeros(N**d))
    return SampleBatch(
        values=values,
        domain_index=domain_index,
        seed=int(sub["seed"]),
        stream_id=int(sub["stream"]),
        factor_ref=sub["factor_ref"].decode("ascii"),
        clamped_mass=float(sub["clamped_mass"]),
        factor=factor,
    )


def payload_kind(file_name):
    """'factor' or 'samples', according to the header of `file_name`"""
    with open(file_name, "rb") as f:
        buffer = f.read(header_dtype.itemsize)
    header = read_header(buffer)
    return {FACTOR: "factor", SAMPLES: "samples"}.get(int(header["payload"]), "unknown")
