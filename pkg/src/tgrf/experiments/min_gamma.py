"""Bisection for the smallest torus that gives a positive semidefinite embedding

The torus half-width is quantized as γ = N·h/2 with N even, so the search moves
N in steps of 2 and the result is resolved to one grid step.  Positive
definiteness is assumed to be monotone in N; this is checked a few steps beyond
the result, and any violation is recorded and warned about rather than raised.

"""

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import NoBracketError, ResourceError, DomainError, CertificationError
from ..torus import (
    TorusGrid, SchemeDescriptor, factorize,
    sufficient_gamma_classical, sufficient_gamma_smooth,
)
from ..utilities import setting

logger = logging.getLogger(__name__)

# Conservative constants for the initial upper end of the bracket
BRACKET_C1 = 3.0
BRACKET_C2 = 3.0
# Number of even N beyond N* checked for monotonicity
MONOTONICITY_STEPS = 3


@dataclass(frozen=True)
class MinGammaResult:
    """Certified minimal torus size for one (model, h, scheme)

    `n_star` is the smallest even N found positive semidefinite, and N*-2 is not
    (unless `at_lower_limit`, in which case N* is the smallest admissible N).
    `margin_at_n_star` and `margin_below` are min/max eigenvalue ratios at N* and
    N*-2.  `extension_ratio` is (N*/m)^d with m the number of sampling-domain
    points per axis.

    """
    d: int
    lam: float
    nu: float
    h: float
    scheme: str
    n_star: int
    gamma_star: float
    extension_ratio: float
    margin_at_n_star: float
    margin_below: float
    at_lower_limit: bool = False
    non_monotone: tuple = field(default_factory=tuple)
    evaluations: int = 0

    def to_dict(self):
        return {
            "d": self.d,
            "lambda": self.lam,
            "nu": self.nu,
            "h": self.h,
            "scheme": self.scheme,
            "n_star": self.n_star,
            "gamma_star": self.gamma_star,
            "extension_ratio": self.extension_ratio,
            "margin_at_n_star": self.margin_at_n_star,
            "margin_below": None if np.isnan(self.margin_below) else self.margin_below,
            "at_lower_limit": self.at_lower_limit,
            "non_monotone": list(self.non_monotone),
            "evaluations": self.evaluations,
            "gamma_resolution": self.h,
        }


class _Predicate:
    """Cached positive-semidefiniteness test as a function of N"""

    def __init__(self, model, h, descriptor, e0, max_cells, rel_tol):
        self.model = model
        self.h = h
        self.descriptor = descriptor
        self.e0 = e0
        self.max_cells = max_cells
        self.rel_tol = rel_tol
        self.margins = {}

    def grid(self, n):
        return TorusGrid(d=self.model.d, n_per_axis=n, h=self.h, e0=self.e0)

    def margin(self, n):
        if n not in self.margins:
            if n ** self.model.d > self.max_cells:
                raise ResourceError(
                    f"N={n} in d={self.model.d} needs {n**self.model.d} cells, "
                    f"above the cap of {self.max_cells}; raise it with write_config(max_cells=...)"
                )
            grid = self.grid(n)
            scheme = self.descriptor.scheme_for(grid, self.model)
            factor = factorize(self.model, grid, scheme, rel_tol=self.rel_tol)
            self.margins[n] = factor.margin
            logger.debug("N=%d (γ=%g): min/max eigenvalue %.3e", n, grid.gamma, factor.margin)
        return self.margins[n]

    def __call__(self, n):
        return self.margin(n) >= -self.rel_tol


def _even_ceil(x):
    return 2 * int(np.ceil(x / 2 - 1e-12))


def initial_upper_n(model, h, descriptor, e0=0.5):
    """Even N from the sufficient-size bounds with constants C1 = C2 = 3"""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if descriptor.is_classical:
            gamma = sufficient_gamma_classical(model, h, BRACKET_C1, BRACKET_C2, e0).value
        else:
            gamma = sufficient_gamma_smooth(model, BRACKET_C1, BRACKET_C2, e0, kind=descriptor.kind).value
    return _even_ceil(2 * gamma / h)


def min_gamma(model, h, descriptor, bounds=None, e0=0.5, max_cells=None, nmax_cap=None, rel_tol=None):
    """Smallest torus half-width γ = N·h/2 giving a positive semidefinite embedding

    Parameters
    ----------
    model : CovarianceModel
    h : float
        Grid spacing, held fixed during the search.
    descriptor : SchemeDescriptor or str
        Scheme to test; smooth cutoffs follow γ as described in
        `SchemeDescriptor`.
    bounds : (int, int), optional
        Initial bracket (N_min, N_max) of even integers.  By default N_min is the
        smallest admissible N and N_max comes from the sufficient-size bounds.
    e0 : float
        Half-width of the sampling domain.
    max_cells : int, optional
        Cap on N^d; defaults to the `max_cells` setting.
    nmax_cap : int, optional
        Largest N the upper end may be expanded to; defaults to the largest
        even N allowed by `max_cells`.
    rel_tol : float, optional
        Positive-semidefiniteness tolerance; defaults to the `pd_rel_tol` setting.

    Returns
    -------
    result : MinGammaResult

    Raises
    ------
    NoBracketError
        If the predicate is still false at the expansion cap.
    ResourceError
        If a grid would exceed `max_cells`.
    CertificationError
        If N* and N*-2 do not keep their verdicts when recomputed from scratch.

    """
    if isinstance(descriptor, str):
        descriptor = SchemeDescriptor(descriptor)
    max_cells = int(max_cells or setting("max_cells"))
    rel_tol = float(rel_tol if rel_tol is not None else setting("pd_rel_tol"))
    d = model.d
    if nmax_cap is None:
        nmax_cap = 2 * int(np.floor(max_cells ** (1 / d) * (1 + 1e-12) / 2))
    predicate = _Predicate(model, h, descriptor, e0, max_cells, rel_tol)

    n_floor = descriptor.min_feasible_n(d, h, e0, model)
    if bounds is not None:
        n_lo, n_hi = (int(b) for b in bounds)
        if n_lo % 2 or n_hi % 2 or not n_lo < n_hi:
            raise DomainError(f"Bracket must be even integers with N_min < N_max; got {bounds}")
        n_lo = max(n_lo, n_floor)
    else:
        n_lo = n_floor
        n_hi = initial_upper_n(model, h, descriptor, e0)
    n_hi = max(n_hi, n_lo + 2)

    at_lower_limit = False
    if predicate(n_lo):
        width = max(n_hi - n_lo, 2)
        while n_lo > n_floor and predicate(n_lo):
            logger.info("Expanding bracket downward: N=%d is already positive semidefinite", n_lo)
            n_hi = n_lo
            n_lo = max(n_lo - width, n_floor)
            width *= 2
        if predicate(n_lo):
            at_lower_limit = True
            n_hi = n_lo
    if not at_lower_limit:
        while not predicate(n_hi):
            if n_hi >= nmax_cap:
                raise NoBracketError(
                    f"No positive semidefinite embedding up to N={n_hi} "
                    f"(γ={n_hi*h/2}) for {model} with the {descriptor.kind} scheme"
                )
            logger.info("Expanding bracket: N=%d is not positive semidefinite", n_hi)
            n_lo = n_hi
            n_hi = min(2 * n_hi, nmax_cap)
        while n_hi - n_lo > 2:
            mid = _even_ceil((n_lo + n_hi) / 2)
            if mid >= n_hi:
                mid = n_hi - 2
            if predicate(mid):
                n_hi = mid
            else:
                n_lo = mid
    n_star = n_hi

    non_monotone = []
    for step in range(1, MONOTONICITY_STEPS + 1):
        n = n_star + 2 * step
        if n ** d > max_cells:
            break
        if not predicate(n):
            non_monotone.append(n)
    if non_monotone:
        message = (
            f"\nPositive definiteness is not monotone in N for {model}, h={h}, "
            f"{descriptor.kind}: true at N*={n_star} but false at {non_monotone}"
        )
        warnings.warn(message)
        logger.warning(message.strip())

    grid = predicate.grid(n_star)
    result = MinGammaResult(
        d=d,
        lam=model.lam,
        nu=model.nu,
        h=h,
        scheme=descriptor.kind,
        n_star=n_star,
        gamma_star=grid.gamma,
        extension_ratio=float((n_star / grid.domain_points_per_axis) ** d),
        margin_at_n_star=predicate.margin(n_star),
        margin_below=np.nan if at_lower_limit else predicate.margin(n_star - 2),
        at_lower_limit=at_lower_limit,
        non_monotone=tuple(non_monotone),
        evaluations=len(predicate.margins),
    )
    if not certify(result, model, descriptor, e0=e0, rel_tol=rel_tol):
        raise CertificationError(
            f"Bracket at N*={n_star} for {model}, h={h}, {descriptor.kind} "
            "does not hold when recomputed"
        )
    logger.info("Minimal γ for %s, h=%g, %s: N*=%d, γ*=%g", model, h, descriptor.kind, n_star, grid.gamma)
    return result


def certify(result, model, descriptor, e0=0.5, rel_tol=None):
    """Recompute the predicate at N* and N*-2 from scratch

    Returns True when N* is positive semidefinite and either N*-2 is not or N* is
    the smallest admissible N.

    """
    rel_tol = float(rel_tol if rel_tol is not None else setting("pd_rel_tol"))
    predicate = _Predicate(model, result.h, descriptor, e0, np.inf, rel_tol)
    if not predicate(result.n_star):
        return False
    if result.at_lower_limit:
        return True
    return not predicate(result.n_star - 2)
