"""Counter-based random streams for reproducible sampling

A stream is a Philox generator keyed by (seed, stream_id), so independent
streams need no coordination between processes.  Standard normals come from
the raw 64-bit output by inverse-CDF transform; each normal consumes exactly one
raw word, so the same (seed, stream_id) yields the same normals on any platform
and regardless of how the draws are split into chunks.

"""

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError

_UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class RngStream:
    """Seed and stream number of a counter-based random stream"""
    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            value = getattr(self, name)
            if int(value) != value or not 0 <= int(value) <= _UINT64_MAX:
                raise DomainError(f"{name} must be an integer in [0, 2**64); got {value}")
            object.__setattr__(self, name, int(value))

    def bit_generator(self):
        return np.random.Philox(key=np.array([self.seed, self.stream_id], dtype=np.uint64))

    def open(self):
        """A fresh `NormalStream` positioned at the start of this stream"""
        return NormalStream(self)


class NormalStream:
    """Sequential reader of standard normal variates from an `RngStream`"""

    def __init__(self, rng):
        self.rng = rng
        self._bit_generator = rng.bit_generator()
        self.consumed = 0

    def uniforms(self, shape):
        """Uniform variates in (0, 1), never exactly 0 or 1"""
        size = int(np.prod(shape))
        raw = self._bit_generator.random_raw(size)
        self.consumed += size
        return (((raw >> np.uint64(11)).astype(float) + 0.5) * 2.0**-53).reshape(shape)

    def normals(self, shape):
        """Standard normal variates via the inverse normal CDF"""
        from scipy.special import ndtri
        return ndtri(self.uniforms(shape))
