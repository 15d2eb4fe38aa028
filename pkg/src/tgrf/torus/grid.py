"""Uniform grids on the torus [-γ, γ)^d

Grid points are x_n = n·h for n ∈ {-N/2, ..., N/2-1}^d, with γ = N·h/2.  Arrays
of grid values are always stored in FFT order along every axis: storage position
j holds offset n = j for j < N/2 and n = j - N otherwise, which is the layout
`scipy.fft.fftn` expects for an even function centered at the origin.

"""

import dataclasses
from dataclasses import dataclass

import numpy as np

from ..errors import ConstraintError, DomainError

# Relative slack when comparing lengths that are products of h
_LENGTH_TOL = 1e-12


@dataclass(frozen=True)
class TorusGrid:
    """Dimension, resolution, and extent of a periodic sampling grid

    Parameters
    ----------
    d : int
        Dimension, one of 1, 2, 3.
    n_per_axis : int
        Even number N ≥ 2 of points per axis.
    h : float
        Grid spacing.
    e0 : float
        Half-width of the sampling domain [-e₀, e₀]^d; the torus must contain
        the difference cube [-2e₀, 2e₀]^d, i.e. γ ≥ 2e₀.

    """
    d: int
    n_per_axis: int
    h: float
    e0: float = 0.5

    def __post_init__(self):
        if self.d not in (1, 2, 3):
            raise DomainError(f"Dimension must be 1, 2, or 3; got d={self.d}")
        if int(self.n_per_axis) != self.n_per_axis or self.n_per_axis < 2 or self.n_per_axis % 2:
            raise DomainError(f"Points per axis must be an even integer N ≥ 2; got N={self.n_per_axis}")
        object.__setattr__(self, "n_per_axis", int(self.n_per_axis))
        if not self.h > 0:
            raise DomainError(f"Grid spacing must be positive; got h={self.h}")
        if not self.e0 > 0:
            raise DomainError(f"Sampling half-width must be positive; got e0={self.e0}")
        if self.gamma < 2 * self.e0 * (1 - _LENGTH_TOL):
            raise ConstraintError(
                f"Torus half-width γ={self.gamma} does not contain the difference cube of half-width 2e0={2*self.e0}"
            )

    @classmethod
    def from_gamma(cls, d, gamma, h, e0=0.5):
        """Smallest grid with spacing `h` whose half-width is at least `gamma`"""
        n = 2 * int(np.ceil(gamma / h * (1 - _LENGTH_TOL)))
        return cls(d=d, n_per_axis=max(n, 2), h=h, e0=e0)

    def with_n(self, n_per_axis):
        return dataclasses.replace(self, n_per_axis=n_per_axis)

    @property
    def N(self):
        return self.n_per_axis

    @property
    def gamma(self):
        """Half-width γ = N·h/2 of the torus"""
        return self.n_per_axis * self.h / 2

    @property
    def shape(self):
        return (self.n_per_axis,) * self.d

    @property
    def cells(self):
        return self.n_per_axis ** self.d

    @property
    def volume(self):
        """(2γ)^d"""
        return (2 * self.gamma) ** self.d

    def axis_offsets(self):
        """Integer offsets n along one axis, in FFT storage order"""
        N = self.n_per_axis
        return np.concatenate([np.arange(0, N // 2), np.arange(-N // 2, 0)])

    def open_offsets(self):
        """Per-axis offsets shaped to broadcast over the full grid, like `np.ogrid`"""
        n = self.axis_offsets()
        return [n.reshape((-1,) + (1,) * (self.d - 1 - axis)) for axis in range(self.d)]

    def points(self):
        """Coordinates of every grid point, shape (N,)*d + (d,), FFT order"""
        return np.stack(np.broadcast_arrays(*[self.h * n for n in self.open_offsets()]), axis=-1)

    @property
    def domain_half_count(self):
        """m₀ such that offsets -m₀..m₀ lie in [-e₀, e₀]"""
        return int(np.floor(self.e0 / self.h * (1 + _LENGTH_TOL)))

    @property
    def domain_points_per_axis(self):
        return 2 * self.domain_half_count + 1

    @property
    def domain_count(self):
        return self.domain_points_per_axis ** self.d

    def domain_axis_offsets(self):
        """Offsets -m₀, ..., m₀ of the sampling domain along one axis"""
        m0 = self.domain_half_count
        return np.arange(-m0, m0 + 1)

    def domain_axis_positions(self):
        """Storage positions of `domain_axis_offsets` in FFT order"""
        return np.mod(self.domain_axis_offsets(), self.n_per_axis)

    def domain_index(self):
        """Offsets n of all sampling-domain points, shape (m^d, d), lexicographic"""
        n = self.domain_axis_offsets()
        mesh = np.meshgrid(*([n] * self.d), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1).astype(np.int32)

    def to_dict(self):
        return {"d": self.d, "n_per_axis": self.n_per_axis, "h": self.h, "e0": self.e0, "gamma": self.gamma}
