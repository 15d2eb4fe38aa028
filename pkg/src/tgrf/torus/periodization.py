"""Periodized covariances on the torus grid

For the classical scheme the periodized covariance is the kernel itself,
restricted to the fundamental cell [-γ, γ)^d and repeated.  For smooth schemes
it is the sum of shifted copies of the kernel times a radial cutoff,

    ρ^ext(x) = Σ_n (ρ φ_κ)(x + 2γn),

which is smooth across the torus seams.  Because 2γ = N·h, every argument that
ever appears is h times the square root of an integer, so each distinct radius is
evaluated only once.

"""

import enum
import itertools
import logging
from dataclasses import dataclass

import numpy as np

from ..errors import ConstraintError, DomainError
from ..cutoff import CutoffKind, CutoffSpec, default_p, phi_univariate

logger = logging.getLogger(__name__)

_LENGTH_TOL = 1e-12


class SchemeKind(enum.Enum):
    CLASSICAL = "classical"
    SMOOTH = "smooth"


@dataclass(frozen=True)
class PeriodizationScheme:
    """Classical truncation, or smooth truncation with a given cutoff"""
    cutoff: CutoffSpec

    @classmethod
    def classical(cls):
        return cls(CutoffSpec.classical())

    @classmethod
    def smooth(cls, cutoff):
        if not cutoff.is_smooth:
            raise ConstraintError("A smooth scheme needs a smooth cutoff")
        return cls(cutoff)

    @property
    def kind(self):
        return SchemeKind.SMOOTH if self.cutoff.is_smooth else SchemeKind.CLASSICAL

    @property
    def is_classical(self):
        return self.kind is SchemeKind.CLASSICAL

    @property
    def tag(self):
        """Cutoff kind name: 'classical', 'bspline', or 'expsmooth'"""
        return self.cutoff.kind.value

    def violations(self, grid):
        """Descriptions of every constraint between this scheme and `grid` that fails"""
        problems = []
        if self.is_classical:
            return problems
        cube_radius = 2 * grid.e0 * np.sqrt(grid.d)
        kappa, r0 = self.cutoff.kappa, self.cutoff.inner_radius
        if grid.gamma < (kappa + cube_radius) / 2 * (1 - _LENGTH_TOL):
            problems.append(
                f"γ={grid.gamma} < (κ + 2e0√d)/2 = {(kappa + cube_radius)/2}: "
                "shifted cutoffs overlap the difference cube"
            )
        if r0 < cube_radius * (1 - _LENGTH_TOL):
            problems.append(
                f"r0={r0} < 2e0√d = {cube_radius}: the cutoff is not 1 on the difference cube"
            )
        return problems

    def validate(self, grid):
        problems = self.violations(grid)
        if problems:
            raise ConstraintError("\n" + "\n".join(problems))

    def shifts(self, grid):
        """Integer shifts n whose support ball B_κ(-2γn) meets [-γ, γ]^d"""
        if self.is_classical:
            return [(0,) * grid.d]
        gamma, kappa = grid.gamma, self.cutoff.kappa
        reach = int(np.floor((kappa + gamma * np.sqrt(grid.d)) / (2 * gamma)))
        shifts = []
        for n in itertools.product(range(-reach, reach + 1), repeat=grid.d):
            gap = np.maximum(0.0, 2 * gamma * np.abs(np.array(n)) - gamma)
            if np.sum(gap**2) < kappa**2:
                shifts.append(n)
        return shifts

    def to_dict(self):
        return self.cutoff.to_dict()


@dataclass(frozen=True)
class SchemeDescriptor:
    """A scheme whose cutoff radii are fixed only once the grid is known

    Searches over the torus size need the cutoff to follow γ.  Unless given
    explicitly, κ is the largest admissible value 2γ - 2e0√d, the B-spline
    smoothness is p = ⌈ν + d/2⌉, and the exponential cutoff's inner radius is
    the difference-cube radius 2e0√d.

    """
    kind: str
    p: int = None
    kappa: float = None
    inner_radius: float = None

    def __post_init__(self):
        kind = CutoffKind(str(self.kind).lower()).value
        object.__setattr__(self, "kind", kind)

    @property
    def is_classical(self):
        return self.kind == CutoffKind.CLASSICAL.value

    def scheme_for(self, grid, model=None):
        """The concrete `PeriodizationScheme` on `grid` for `model`"""
        if self.is_classical:
            return PeriodizationScheme.classical()
        cube_radius = 2 * grid.e0 * np.sqrt(grid.d)
        kappa = self.kappa if self.kappa is not None else 2 * grid.gamma - cube_radius
        if self.kind == CutoffKind.BSPLINE.value:
            p = self.p
            if p is None:
                if model is None:
                    raise DomainError("The default B-spline smoothness depends on ν; pass the model")
                p = default_p(model.nu, grid.d)
            return PeriodizationScheme.smooth(CutoffSpec.bspline(kappa, p))
        r0 = self.inner_radius if self.inner_radius is not None else cube_radius
        return PeriodizationScheme.smooth(CutoffSpec.expsmooth(kappa, r0))

    def is_feasible(self, grid, model=None):
        """Whether a valid scheme exists on `grid`"""
        try:
            scheme = self.scheme_for(grid, model)
        except (ConstraintError, DomainError):
            return False
        return not scheme.violations(grid)

    def min_feasible_n(self, d, h, e0=0.5, model=None):
        """Smallest even N for which the scheme is feasible with spacing `h`"""
        from .grid import TorusGrid
        cube_radius = 2 * e0 * np.sqrt(d)
        if self.is_classical or self.kappa is not None:
            gamma = 2 * e0
        elif self.kind == CutoffKind.BSPLINE.value:
            gamma = 3 * e0 * np.sqrt(d)
        else:
            gamma = cube_radius
        if self.kappa is not None:
            gamma = max(gamma, (self.kappa + cube_radius) / 2)
        grid = TorusGrid.from_gamma(d, max(gamma, 2 * e0), h, e0)
        # the default radii become admissible within a few grid steps of this γ
        for _ in range(64):
            if self.is_feasible(grid, model):
                return grid.n_per_axis
            grid = grid.with_n(grid.n_per_axis + 2)
        raise ConstraintError(
            f"No torus with spacing h={h} admits the {self.kind} scheme {self.to_dict()}"
        )

    def to_dict(self):
        return {"kind": self.kind, "p": self.p, "kappa": self.kappa, "inner_radius": self.inner_radius}

    @classmethod
    def from_dict(cls, data):
        if isinstance(data, str):
            return cls(kind=data)
        return cls(**{k: data.get(k) for k in ("kind", "p", "kappa", "inner_radius")})


def _radial_on_lattice(function, q, h):
    """function(h·√q) for integer squared radii q, evaluating each distinct q once"""
    unique, inverse = np.unique(q, return_inverse=True)
    return function(h * np.sqrt(unique.astype(float)))[inverse.reshape(q.shape)]


def periodized_cov_on_grid(model, grid, scheme):
    """Periodized covariance ρ^ext at every grid point, in FFT storage order

    Parameters
    ----------
    model : CovarianceModel
    grid : TorusGrid
    scheme : PeriodizationScheme

    Returns
    -------
    cov : ndarray
        Array of shape `grid.shape`.  For the classical scheme this is ρ(x_n);
        for smooth schemes it is Σ_n (ρ φ_κ)(x + 2γn) over the shifts whose
        support meets the fundamental cell.

    Raises
    ------
    ConstraintError
        If the smooth-scheme radii are incompatible with the grid.

    """
    if model.d != grid.d:
        raise DomainError(f"Model dimension {model.d} differs from grid dimension {grid.d}")
    scheme.validate(grid)
    N, h = grid.n_per_axis, grid.h
    offsets = grid.open_offsets()

    if scheme.is_classical:
        q = sum(n.astype(np.int64) ** 2 for n in offsets)
        return _radial_on_lattice(model.rho_radial, np.broadcast_to(q, grid.shape), h)

    cutoff = scheme.cutoff

    def truncated(r):
        return model.rho_radial(r) * phi_univariate(cutoff, r)

    shifts = scheme.shifts(grid)
    logger.debug("Periodizing over %d shifts on a grid of %d cells", len(shifts), grid.cells)
    # squared support radius in units of h²
    q_max = (cutoff.kappa / h) ** 2
    cov = np.zeros(grid.shape)
    for shift in shifts:
        q = sum((n.astype(np.int64) + N * s) ** 2 for n, s in zip(offsets, shift))
        q = np.broadcast_to(q, grid.shape)
        inside = q < q_max
        if np.any(inside):
            cov[inside] += _radial_on_lattice(truncated, q[inside], h)
    return cov
