"""Truncation functions used to build periodized covariances

Three kinds are supported:

  * `classical`: the per-axis indicator of [-γ, γ), which is what plain
    circulant embedding implicitly uses;
  * `bspline`: a C^{2p} radial cutoff that is 1 on [0, κ/2] and falls to 0 at κ
    through the integrated cardinal B-spline of order P = 2p+1;
  * `expsmooth`: the C^∞ cutoff η(a)/(η(a) + η(b)) with η(x) = exp(-1/x) for
    x > 0, equal to 1 on [0, r₀] and 0 beyond κ.

"""

import enum
from dataclasses import dataclass

import numpy as np

from ..errors import ConstraintError, DomainError
from ..specfun import integrated_bspline, bspline_derivative


class CutoffKind(enum.Enum):
    CLASSICAL = "classical"
    BSPLINE = "bspline"
    EXPSMOOTH = "expsmooth"


@dataclass(frozen=True)
class CutoffSpec:
    """Parameters of a truncation function

    Use the constructors `CutoffSpec.classical()`, `CutoffSpec.bspline(kappa, p)`,
    and `CutoffSpec.expsmooth(kappa, inner_radius)` rather than the bare
    initializer.

    Parameters
    ----------
    kind : CutoffKind
    kappa : float or None
        Outer radius κ; the cutoff vanishes for |t| ≥ κ.
    inner_radius : float or None
        Radius r₀ up to which the cutoff is identically 1.  Always κ/2 for the
        B-spline kind.
    p : int or None
        Smoothness parameter of the B-spline kind; the spline order is P = 2p+1.

    """
    kind: CutoffKind
    kappa: float = None
    inner_radius: float = None
    p: int = None

    def __post_init__(self):
        kind = CutoffKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is CutoffKind.CLASSICAL:
            return
        if self.kappa is None or not self.kappa > 0:
            raise DomainError(f"Smooth cutoffs need an outer radius κ > 0; got {self.kappa}")
        if kind is CutoffKind.BSPLINE:
            if self.p is None or int(self.p) != self.p or self.p < 1:
                raise DomainError(f"B-spline cutoff needs an integer p ≥ 1; got {self.p}")
            object.__setattr__(self, "p", int(self.p))
            if self.inner_radius is None:
                object.__setattr__(self, "inner_radius", self.kappa / 2)
            elif self.inner_radius != self.kappa / 2:
                raise ConstraintError(
                    f"B-spline cutoff has inner radius κ/2={self.kappa/2}; got {self.inner_radius}"
                )
        else:
            if self.inner_radius is None or not 0 < self.inner_radius < self.kappa:
                raise ConstraintError(
                    f"Exponential cutoff needs 0 < r₀ < κ; got r₀={self.inner_radius}, κ={self.kappa}"
                )

    @classmethod
    def classical(cls):
        return cls(CutoffKind.CLASSICAL)

    @classmethod
    def bspline(cls, kappa, p):
        return cls(CutoffKind.BSPLINE, kappa=float(kappa), p=p)

    @classmethod
    def expsmooth(cls, kappa, inner_radius):
        return cls(CutoffKind.EXPSMOOTH, kappa=float(kappa), inner_radius=float(inner_radius))

    @property
    def is_smooth(self):
        return self.kind is not CutoffKind.CLASSICAL

    @property
    def P(self):
        """Order of the B-spline, 2p+1"""
        if self.kind is not CutoffKind.BSPLINE:
            raise AttributeError("Only the B-spline cutoff has an order P")
        return 2 * self.p + 1

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "kappa": self.kappa,
            "inner_radius": self.inner_radius,
            "p": self.p,
        }


def default_p(nu, d):
    """Smoothness parameter ⌈ν + d/2⌉ for which the B-spline cutoff is fine enough"""
    return max(1, int(np.ceil(nu + d / 2)))


def _eta(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape)
    positive = x > 0
    with np.errstate(under="ignore"):
        out[positive] = np.exp(-1.0 / x[positive])
    return out


def _bspline_flank_argument(spec, r):
    # maps r ∈ [κ/2, κ] onto u ∈ [0, -P]
    return (2 * spec.P / spec.kappa) * (spec.kappa / 2 - r)


def phi_univariate(spec, t, half_width=None):
    """Evaluate the univariate cutoff φ(t)

    Parameters
    ----------
    spec : CutoffSpec
    t : array_like
        Evaluation point(s).
    half_width : float, optional
        Torus half-width γ; required for the classical kind, which is the
        indicator of [-γ, γ).

    Returns
    -------
    phi : float or ndarray
        Values in [0, 1].  Smooth kinds are even, exactly 1 on [-r₀, r₀], and
        exactly 0 for |t| ≥ κ.

    """
    t = np.asarray(t, dtype=float)
    if spec.kind is CutoffKind.CLASSICAL:
        if half_width is None:
            raise DomainError("The classical cutoff needs the torus half-width γ")
        values = ((t >= -half_width) & (t < half_width)).astype(float)
        return values[()] if values.ndim == 0 else values

    r = np.abs(t)
    kappa, r0 = spec.kappa, spec.inner_radius
    values = np.zeros(r.shape)
    values[r <= r0] = 1.0
    flank = (r > r0) & (r < kappa)
    if np.any(flank):
        rf = r[flank]
        if spec.kind is CutoffKind.BSPLINE:
            values[flank] = integrated_bspline(spec.P, _bspline_flank_argument(spec, rf))
        else:
            a = _eta((kappa - rf) / (kappa - r0))
            b = _eta((rf - r0) / (kappa - r0))
            values[flank] = a / (a + b)
    return values[()] if values.ndim == 0 else values


def phi_radial(spec, x):
    """Radial lift φ_κ(x) = φ(|x|) of a smooth cutoff

    Points carry their coordinates along the last axis; for convenience a bare
    scalar or 1-d array is read as points on the line.

    Raises
    ------
    ConstraintError
        For the classical kind, whose truncation is per-axis rather than radial.

    """
    if not spec.is_smooth:
        raise ConstraintError("The classical truncation is per-axis and has no radial form")
    x = np.asarray(x, dtype=float)
    r = np.abs(x) if x.ndim <= 1 else np.linalg.norm(x, axis=-1)
    return phi_univariate(spec, r)


def phi_derivative(spec, alpha, t):
    """Exact α-th derivative of the B-spline cutoff

    On the right flank φ(t) = M_P(u) with u = (2P/κ)(κ/2 - t), so that

        φ^{(α)}(t) = (-2P/κ)^α N_P^{(α-1)}(u),

    and the left flank follows from evenness, φ^{(α)}(-t) = (-1)^α φ^{(α)}(t).

    """
    if spec.kind is not CutoffKind.BSPLINE:
        raise ConstraintError("Exact derivatives are only available for the B-spline cutoff")
    alpha = int(alpha)
    if alpha < 0 or alpha > 2 * spec.p:
        raise DomainError(f"Derivative order must satisfy 0 ≤ α ≤ 2p = {2*spec.p}; got {alpha}")
    if alpha == 0:
        return phi_univariate(spec, t)
    t = np.asarray(t, dtype=float)
    r = np.abs(t)
    values = np.zeros(r.shape)
    flank = (r >= spec.kappa / 2) & (r <= spec.kappa)
    if np.any(flank):
        u = _bspline_flank_argument(spec, r[flank])
        scale = (-2 * spec.P / spec.kappa) ** alpha
        values[flank] = scale * bspline_derivative(spec.P, alpha - 1, u)
    values = np.where(t < 0, (-1) ** alpha * values, values)
    return values[()] if values.ndim == 0 else values


def derivative_bound_check(spec, alpha, sample_count=2001):
    """Largest sampled |φ^{(α)}| together with the bound 2^α (2P/κ)^α

    Derivatives are computed with `phi_derivative` on `sample_count` equally
    spaced points of [-κ, κ] (the knots ±κ/2 are included for odd counts that
    are 1 mod 4).

    Returns
    -------
    observed, bound : float
        The caller compares them; `observed <= bound` must hold.

    """
    if spec.kind is not CutoffKind.BSPLINE:
        raise ConstraintError("The derivative bound applies to the B-spline cutoff")
    if alpha > 2 * spec.p:
        raise DomainError(f"Derivative order must not exceed 2p = {2*spec.p}; got {alpha}")
    t = np.linspace(-spec.kappa, spec.kappa, int(sample_count))
    observed = float(np.max(np.abs(phi_derivative(spec, alpha, t))))
    bound = float(2**alpha * (2 * spec.P / spec.kappa) ** alpha)
    return observed, bound
