"""Matérn covariance kernel and its Fourier transform

The kernel with correlation length λ and smoothness ν in d dimensions is

    ρ(x) = 2^{1-ν}/Γ(ν) · z^ν K_ν(z),     z = √(2ν) |x| / λ,

normalized so that ρ(0) = 1, and its Fourier transform ∫ρ(x) e^{-iω·x} dx is

    ρ̂(ω) = C_{λ,ν} (2ν/λ² + |ω|²)^{-(ν + d/2)},
    C_{λ,ν} = (2√π)^d Γ(ν + d/2) (2ν)^ν / (Γ(ν) λ^{2ν}).

All prefactors are combined in log space.

"""

import dataclasses
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..specfun import log_bessel_k, log_gamma, MAX_ORDER

# Below this z the kernel is 1 to double precision unless ν is tiny
_ORIGIN_Z = 1e-8
_SMALL_NU = 1e-2


def _radii(x, d):
    """|x| for points with coordinates along the last axis

    For d == 1, bare scalars and 1-d arrays are read as coordinates of points on
    the line; otherwise the last axis must have length d.

    """
    x = np.asarray(x, dtype=float)
    if d == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        return np.abs(x)
    if x.shape[-1] != d:
        raise DomainError(f"Expected points with {d} coordinates along the last axis; got shape {x.shape}")
    return np.linalg.norm(x, axis=-1)


@dataclass(frozen=True)
class CovarianceModel:
    """Isotropic Matérn covariance with unit variance

    Parameters
    ----------
    lam : float
        Correlation length λ > 0.
    nu : float
        Smoothness ν, with 0 < ν ≤ 60.
    d : int
        Spatial dimension, one of 1, 2, 3.

    """
    lam: float
    nu: float
    d: int = 1

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError(f"Correlation length must be positive; got λ={self.lam}")
        if not 0 < self.nu <= MAX_ORDER:
            raise DomainError(f"Smoothness must satisfy 0 < ν ≤ {MAX_ORDER:g}; got ν={self.nu}")
        if self.d not in (1, 2, 3):
            raise DomainError(f"Dimension must be 1, 2, or 3; got d={self.d}")

    @property
    def log_prefactor(self):
        """ln C_{λ,ν}, the constant in front of the spectral density"""
        nu, d, lam = self.nu, self.d, self.lam
        return (
            d * np.log(2 * np.sqrt(np.pi))
            + log_gamma(nu + d / 2)
            + nu * np.log(2 * nu)
            - log_gamma(nu)
            - 2 * nu * np.log(lam)
        )

    @property
    def prefactor(self):
        return float(np.exp(self.log_prefactor))

    def rho_radial(self, r):
        """Kernel value as a function of the distance |x| = r ≥ 0"""
        r = np.abs(np.asarray(r, dtype=float))
        nu = self.nu
        z = np.sqrt(2 * nu) * r / self.lam
        values = np.ones(z.shape)
        if nu > _SMALL_NU:
            evaluate = z >= _ORIGIN_Z
        else:
            evaluate = z > 0
        if np.any(evaluate):
            zz = z[evaluate]
            log_values = (
                (1 - nu) * np.log(2.0) - log_gamma(nu)
                + nu * np.log(zz) + log_bessel_k(nu, zz)
            )
            with np.errstate(under="ignore"):
                values[evaluate] = np.minimum(np.exp(log_values), 1.0)
        return values[()] if values.ndim == 0 else values

    def rho(self, x):
        """Kernel value ρ(x) at point(s) `x`; ρ(0) is exactly 1"""
        return self.rho_radial(_radii(x, self.d))

    def spectral_density(self, omega):
        """Fourier transform ρ̂(ω) at frequency point(s) `omega`"""
        w = _radii(omega, self.d)
        exponent = -(self.nu + self.d / 2)
        values = np.exp(self.log_prefactor + exponent * np.log(2 * self.nu / self.lam**2 + w**2))
        return values[()] if np.ndim(values) == 0 else values

    def rescaled(self, c):
        """The same kernel with correlation length c·λ"""
        if not c > 0:
            raise DomainError(f"Scale factor must be positive; got c={c}")
        return dataclasses.replace(self, lam=c * self.lam)

    def rho_scaling_check(self, x, c):
        """Return (ρ_{λ,ν}(x), ρ_{cλ,ν}(cx)), which agree for every c > 0"""
        x = np.asarray(x, dtype=float)
        return self.rho(x), self.rescaled(c).rho(c * x)

    def to_dict(self):
        return {"lambda": float(self.lam), "nu": float(self.nu), "d": int(self.d)}

    @classmethod
    def from_dict(cls, data):
        return cls(lam=float(data["lambda"]), nu=float(data["nu"]), d=int(data.get("d", 1)))


def rho(model, x):
    """Matérn kernel ρ_{λ,ν}(x); see `CovarianceModel.rho`"""
    return model.rho(x)


def spectral_density(model, omega):
    """Matérn spectral density ρ̂_{λ,ν}(ω); see `CovarianceModel.spectral_density`"""
    return model.spectral_density(omega)


def rho_scaling_check(model, x, c):
    """Pair (ρ_{λ,ν}(x), ρ_{cλ,ν}(cx)); see `CovarianceModel.rho_scaling_check`"""
    return model.rho_scaling_check(x, c)
