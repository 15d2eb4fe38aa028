"""Sufficient torus sizes for positive definiteness

Both bounds involve unspecified constants C1, C2, which are calibrated
empirically (see the minimal-γ experiments).  Hypotheses of the underlying
estimates that fail are reported, not enforced: the value is still returned,
tagged as out of regime.

"""

import warnings
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SizeBound:
    value: float
    in_regime: bool = True
    violations: tuple = field(default_factory=tuple)


def _report(name, violations):
    if violations:
        warnings.warn(f"\n{name} is outside the regime of its estimate:\n  " + "\n  ".join(violations))


def sufficient_gamma_classical(model, h, C1=1.0, C2=1.0, e0=0.5):
    """Torus half-width sufficient for the classical scheme

    γ = λ (C1 + C2 √ν log max(λ/h, √ν)), clamped below by 2e0.

    The estimate assumes ν ≥ 1/2, λ ≤ 1, and h/λ ≤ e^{-1}.

    """
    lam, nu = model.lam, model.nu
    violations = []
    if nu < 0.5:
        violations.append(f"ν={nu} < 1/2")
    if lam > 1:
        violations.append(f"λ={lam} > 1")
    if h / lam > np.exp(-1):
        violations.append(f"h/λ={h/lam} > 1/e")
    _report("The classical γ bound", violations)
    value = lam * (C1 + C2 * np.sqrt(nu) * np.log(max(lam / h, np.sqrt(nu))))
    return SizeBound(max(float(value), 2 * e0), not violations, tuple(violations))


def _kappa_floor(d, e0, kind):
    """Smallest admissible κ: at least 1, and the plateau must cover the difference cube"""
    cube_radius = 2 * e0 * np.sqrt(d)
    if kind == "bspline":
        # plateau radius is κ/2
        return max(1.0, 2 * cube_radius)
    return max(1.0, cube_radius)


def sufficient_kappa_smooth(model, C1=1.0, C2=1.0, e0=0.5, kind="expsmooth"):
    """Cutoff radius sufficient for smooth periodization

    κ = λ (C1 + C2 max(√ν (1 + |ln ν|), 1/√ν)), clamped below by max(1, r) where r
    is the smallest κ whose plateau still covers the difference cube of radius
    2e0√d: r = 2e0√d for the exponential cutoff and 4e0√d for the B-spline
    cutoff, whose plateau ends at κ/2.

    """
    lam, nu = model.lam, model.nu
    growth = max(np.sqrt(nu) * (1 + abs(np.log(nu))), 1 / np.sqrt(nu))
    value = lam * (C1 + C2 * growth)
    return SizeBound(max(float(value), _kappa_floor(model.d, e0, kind)))


def sufficient_gamma_smooth(model, C1=1.0, C2=1.0, e0=0.5, kind="expsmooth"):
    """Torus half-width γ = (κ + 2e0√d)/2 for the sufficient κ of `kind`"""
    kappa = sufficient_kappa_smooth(model, C1, C2, e0, kind=kind).value
    return SizeBound(float((kappa + 2 * e0 * np.sqrt(model.d)) / 2))
