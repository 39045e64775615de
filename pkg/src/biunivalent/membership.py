"""Numeric membership tests by sampling the class operators on circles.

A function f belongs to r_sigma(lam, phi) when both (1-lam) f(z)/z + lam f'(z)
and the same expression for the inverse g take values in phi(D); for
bi_starlike the operator is z f'(z)/f(z). Values are sampled on circles
|z| = r (r = 1 included: the operators of f_nu = nu z/(nu - z) extend
continuously to the closed disk for nu > 1) and compared against the open
region with a small closure tolerance, so tangency counts as membership.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from . import phi as phimod
from .bounds import ClassSpec, class_bounds
from .errors import DegenerateDisk, InvalidBracket, NoRegionPredicate
from .phi import PhiProfile
from .series import TruncatedSeries, derivative, invert

CLOSURE_TOL = 1e-9
DEFAULT_RADII = (0.9, 0.99, 0.999, 1.0)
DEFAULT_ANGLES = 2048


@dataclass(frozen=True)
class FnuSpec:
    """f_nu(z) = nu z / (nu - z) with inverse g_nu(w) = nu w / (nu + w)."""

    nu: float

    def __post_init__(self):
        if not self.nu > 1:
            raise DegenerateDisk(f"nu must exceed 1, got {self.nu}")

    def pair(self) -> "AnalyticPair":
        nu = self.nu
        return AnalyticPair(
            f=lambda z: nu * z / (nu - z),
            df=lambda z: nu * nu / (nu - z) ** 2,
            g=lambda w: nu * w / (nu + w),
            dg=lambda w: nu * nu / (nu + w) ** 2,
            name=f"fnu:nu={nu!r}",
        )

    @property
    def a2(self) -> float:
        return 1.0 / self.nu

    @property
    def a3(self) -> float:
        return 1.0 / self.nu**2


@dataclass(frozen=True)
class AnalyticPair:
    """A function, its inverse, and both derivatives as vectorised callables."""

    f: Callable
    df: Callable
    g: Callable
    dg: Callable
    name: str = "f"

    @classmethod
    def from_series(cls, f: TruncatedSeries, name: str = "series") -> "AnalyticPair":
        """Polynomial truncations of f and its series inverse (approximate near |z| = 1)."""
        g = invert(f)
        df_c, dg_c = derivative(f), derivative(g)
        return cls(
            f=f,
            df=lambda z: np.polyval(df_c[::-1], z),
            g=g,
            dg=lambda w: np.polyval(dg_c[::-1], w),
            name=name,
        )


@dataclass(frozen=True)
class Disk:
    centre: complex
    radius: float
    squared: bool = False  # region is {w^2 : |w - centre| < radius}

    def __post_init__(self):
        if not self.radius > 0:
            raise DegenerateDisk(f"radius must be positive, got {self.radius}")

    def boundary(self, samples: int) -> np.ndarray:
        theta = 2 * np.pi * np.arange(samples) / samples
        w = self.centre + self.radius * np.exp(1j * theta)
        return w * w if self.squared else w


@dataclass(frozen=True)
class MembershipVerdict:
    function: str
    cls: str
    verdict: bool
    margin: float
    worst_point: complex

    def as_dict(self):
        return {
            "function": self.function,
            "class": self.cls,
            "verdict": self.verdict,
            "margin": self.margin,
            "worst_point": [self.worst_point.real, self.worst_point.imag],
        }


def fnu_image_disk(nu: float, mode: str = "ratio") -> Disk:
    """Image of D under f_nu(z)/z (= z f_nu'/f_nu), or under f_nu' in the sqrt variable."""
    if not nu > 1:
        raise DegenerateDisk(f"nu must exceed 1, got {nu}")
    centre = nu * nu / (nu * nu - 1)
    radius = nu / (nu * nu - 1)
    if mode in ("ratio", "starlike_ratio"):
        return Disk(centre, radius)
    if mode == "derivative":
        return Disk(centre, radius, squared=True)
    raise ValueError(f"unknown mode {mode!r}")


def disk_in_region(disk: Disk, phi: PhiProfile, samples: int = 2048) -> bool:
    if not phi.has_region:
        raise NoRegionPredicate("custom profiles have no region predicate")
    if samples < 64:
        raise ValueError("need at least 64 boundary samples")
    margin = phimod.region_margin(phi, disk.boundary(samples))
    return bool(margin.min() >= -CLOSURE_TOL)


def class_operator(spec: ClassSpec, func: Callable, dfunc: Callable, z):
    if spec.family == "r_sigma":
        lam = spec.lam
        return (1 - lam) * func(z) / z + lam * dfunc(z)
    return z * dfunc(z) / func(z)


def check_membership(
    f: FnuSpec | AnalyticPair,
    spec: ClassSpec,
    radii=DEFAULT_RADII,
    angles: int = DEFAULT_ANGLES,
) -> MembershipVerdict:
    """Both subordinations sampled on the given circles; margin is the worst case.

    The worst grid angle on each circle is polished with a bounded scalar
    minimisation so tangency is resolved well below the grid spacing.
    """
    if not spec.phi.has_region:
        raise NoRegionPredicate("custom profiles have no region predicate")
    pair = f.pair() if isinstance(f, FnuSpec) else f
    theta = 2 * np.pi * np.arange(angles) / angles
    dtheta = 2 * np.pi / angles
    worst_margin, worst_point = math.inf, 0j
    for func, dfunc in ((pair.f, pair.df), (pair.g, pair.dg)):
        for r in radii:
            vals = class_operator(spec, func, dfunc, r * np.exp(1j * theta))
            margins = phimod.region_margin(spec.phi, vals)
            i = int(np.argmin(margins))

            def at(t, r=r, func=func, dfunc=dfunc):
                return float(phimod.region_margin(spec.phi, class_operator(spec, func, dfunc, r * np.exp(1j * t))))

            res = minimize_scalar(
                at,
                bounds=(theta[i] - dtheta, theta[i] + dtheta),
                method="bounded",
                options={"xatol": 1e-12},
            )
            m, t = (res.fun, res.x) if res.fun < margins[i] else (margins[i], theta[i])
            if m < worst_margin:
                worst_margin = float(m)
                worst_point = complex(class_operator(spec, func, dfunc, r * np.exp(1j * t)))
    return MembershipVerdict(
        pair.name, spec.label(), worst_margin >= -CLOSURE_TOL, worst_margin, worst_point
    )


def membership_threshold(
    spec: ClassSpec,
    lo: float,
    hi: float,
    tol: float = 1e-9,
    radii=DEFAULT_RADII,
    angles: int = DEFAULT_ANGLES,
) -> float:
    """Smallest nu (to ``tol``) with f_nu in the class, by bisection.

    Requires membership at ``hi``. If membership already holds at ``lo`` the
    threshold is at or below the bracket and ``lo`` is returned.
    """
    if not (1 < lo < hi):
        raise InvalidBracket(f"need 1 < lo < hi, got lo={lo}, hi={hi}")

    def member(nu):
        return check_membership(FnuSpec(nu), spec, radii, angles).verdict

    if not member(hi):
        raise InvalidBracket(f"f_nu is not in {spec.label()} at hi={hi}")
    if member(lo):
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if member(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class ConsistencyResult:
    ok: bool
    a2: float
    a3: float
    a2_bound: float
    a3_bound: float

    def as_dict(self):
        return dict(self.__dict__)


def bound_consistency_check(spec: ClassSpec, f: FnuSpec) -> ConsistencyResult:
    """Coefficients a2 = 1/nu, a3 = 1/nu^2 of f_nu against the class bounds."""
    rep = class_bounds(spec)
    ok = f.a2 <= rep.a2_bound + 1e-12 and f.a3 <= rep.a3_bound + 1e-12
    return ConsistencyResult(ok, f.a2, f.a3, rep.a2_bound, rep.a3_bound)
