"""Monte Carlo stress tests of the coefficient bounds.

Carathéodory functions are generated as p = (1 + w)/(1 - w) from Schwarz
functions w(z) = e^{i theta} z B(z), with B a Blaschke product of degree <= 2,
so every sample is a genuine member of the class. The coefficient relations
of each class turn (p1, p2) into (a2, a3) and, for the inverse, into the
(q1, q2) the inverse side would need; an instance is kept ("admissible") only
when that (q1, q2) lies in the second-order Carathéodory coefficient body

    |q1| <= 2,   |q2 - q1^2/2| <= 2 - |q1|^2/2.

Randomness comes from numpy's PCG64 seeded through SeedSequence; draws are
made in fixed-size chunks, each with its own spawned stream, so a report
depends only on (seed, n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import phi as phimod
from .bounds import (
    ClassSpec,
    bi_starlike_fekete_szego_bound,
    class_bounds,
    fekete_szego_bound,
    tau,
)
from .errors import InvalidSchwarz, TheoremViolation
from .phi import PhiProfile
from .series import TruncatedSeries, compose

VIOLATION_TOL = 1e-9
BODY_TOL = 1e-12
CHUNK = 1 << 15
FS_PROBES = (-2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0)
MAX_REPORTED = 10


@dataclass(frozen=True)
class SchwarzSpec:
    theta: float
    blaschke_params: tuple = ()

    def __post_init__(self):
        if len(self.blaschke_params) > 2:
            raise InvalidSchwarz("at most two Blaschke factors")
        for c in self.blaschke_params:
            if not abs(c) < 1:
                raise InvalidSchwarz(f"Blaschke parameter {c} is not inside the unit disk")


@dataclass(frozen=True)
class CaratheodorySample:
    p1: complex
    p2: complex
    q1: complex
    q2: complex
    admissible: bool
    a2: complex
    a3: complex


def _blaschke_factor(c: complex, order: int) -> np.ndarray:
    """Taylor coefficients d_0..d_order of (z - c)/(1 - conj(c) z)."""
    k = np.arange(order + 1)
    geo = np.conj(c) ** k  # 1/(1 - conj(c) z)
    out = -c * geo
    out[1:] += geo[:-1]
    return out


def schwarz_series(spec: SchwarzSpec, order: int = 4) -> TruncatedSeries:
    poly = np.array([1.0 + 0j])
    for c in spec.blaschke_params:
        poly = np.convolve(poly, _blaschke_factor(complex(c), order))[: order]
    coeffs = np.zeros(order, dtype=complex)
    coeffs[: min(order, poly.size)] = np.exp(1j * spec.theta) * poly[:order]
    return TruncatedSeries(coeffs)


def sample_caratheodory(spec: SchwarzSpec, order: int = 4) -> tuple[complex, complex]:
    """(p1, p2) of p = (1 + w)/(1 - w) = 1 + 2(w + w^2 + ...) for the given Schwarz w."""
    w = schwarz_series(spec, order)
    geometric = TruncatedSeries(np.full(order, 2.0 + 0j))  # 2t + 2t^2 + ...
    p = compose(geometric, w)
    return p.coefficient(1), p.coefficient(2)


def _schwarz_coefficients(theta, c, d, count):
    """Vectorised (w1, w2) for w = e^{i theta} z B(z); ``count`` factors used per draw."""
    rot = np.exp(1j * theta)
    # one factor (z - c)/(1 - conj(c) z) = -c + (1 - |c|^2) z + ...
    b0_c, b1_c = -c, 1 - np.abs(c) ** 2
    b0_d, b1_d = -d, 1 - np.abs(d) ** 2
    b0 = np.where(count == 0, 1.0, np.where(count == 1, b0_c, b0_c * b0_d))
    b1 = np.where(count == 0, 0.0, np.where(count == 1, b1_c, b0_c * b1_d + b1_c * b0_d))
    return rot * b0, rot * b1


def draw_caratheodory(rng: np.random.Generator, n: int):
    """n Carathéodory pairs (p1, p2) from random Schwarz functions."""
    theta = rng.uniform(0, 2 * np.pi, n)
    count = rng.choice(3, size=n, p=(0.1, 0.45, 0.45))
    c = np.sqrt(rng.uniform(0, 1, n)) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    d = np.sqrt(rng.uniform(0, 1, n)) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    w1, w2 = _schwarz_coefficients(theta, c, d, count)
    return 2 * w1, 2 * w2 + 2 * w1 * w1


def in_body(c1, c2, tol: float = BODY_TOL):
    c1 = np.asarray(c1)
    c2 = np.asarray(c2)
    return (np.abs(c1) <= 2 + tol) & (
        np.abs(c2 - c1 * c1 / 2) <= 2 - np.abs(c1) ** 2 / 2 + tol
    )


def _derive(spec: ClassSpec, p1, p2):
    b1, b2 = phimod.coefficients(spec.phi)
    q1 = -p1
    if spec.family == "r_sigma":
        lam = spec.lam
        a2 = b1 * p1 / (2 * (1 + lam))
        a3 = (b1 * p2 / 2 + p1 * p1 * (b2 - b1) / 4) / (1 + 2 * lam)
        q2 = (2 / b1) * ((1 + 2 * lam) * (2 * a2 * a2 - a3) - q1 * q1 * (b2 - b1) / 4)
    else:
        a2 = b1 * p1 / 2
        a3 = (a2 * a2 + b2 * p1 * p1 / 4 + (b1 / 2) * (p2 - p1 * p1 / 2)) / 2
        q2 = (2 / b1) * (3 * a2 * a2 - 2 * a3 - b2 * q1 * q1 / 4) + q1 * q1 / 2
    return a2, a3, q1, q2


def derive_instance(lam: float, phi: PhiProfile, p1, p2) -> CaratheodorySample:
    """r_sigma(lam, phi) coefficients implied by (p1, p2) and the inverse-side (q1, q2)."""
    return _instance(ClassSpec("r_sigma", phi, float(lam)), p1, p2)


def derive_starlike_instance(phi: PhiProfile, p1, p2) -> CaratheodorySample:
    return _instance(ClassSpec("bi_starlike", phi), p1, p2)


def _instance(spec, p1, p2):
    p1, p2 = complex(p1), complex(p2)
    a2, a3, q1, q2 = _derive(spec, p1, p2)
    admissible = bool(in_body(q1, q2))
    return CaratheodorySample(p1, p2, complex(q1), complex(q2), admissible, complex(a2), complex(a3))


def nu_parameter(spec: ClassSpec, x: float) -> float:
    """nu with a3 - x a2^2 (or 2a3 - (x+1) a2^2) proportional to p2 - (nu/2) p1^2."""
    b1, b2 = phimod.coefficients(spec.phi)
    t = tau(spec.lam) if spec.family == "r_sigma" else 1.0
    return x * b1 / t - b2 / b1 + 1


def fs_functional(spec: ClassSpec, a2, a3, x: float):
    if spec.family == "r_sigma":
        return np.abs(a3 - x * a2 * a2)
    return np.abs(2 * a3 - (x + 1) * a2 * a2)


def fs_bound(spec: ClassSpec, x: float) -> float:
    if spec.family == "r_sigma":
        return fekete_szego_bound(spec.lam, spec.phi, x)
    return bi_starlike_fekete_szego_bound(spec.phi, x)


def _carath_excess(c1, c2, nu):
    """|c2 - (nu/2) c1^2| - max{2, 2|nu - 1|}; positive means a violation."""
    return np.abs(c2 - 0.5 * nu * c1 * c1) - max(2.0, 2.0 * abs(nu - 1.0))


@dataclass
class StressReport:
    cls: str
    n: int
    seed: int
    admissible_count: int = 0
    max_a2: float = 0.0
    max_a3: float = 0.0
    bound_a2: float = 0.0
    bound_a3: float = 0.0
    max_fs_ratio: float = 0.0
    violations: list = field(default_factory=list)
    violation_count: int = 0

    @property
    def admissibility_rate(self) -> float:
        return self.admissible_count / self.n if self.n else 0.0

    def as_dict(self) -> dict:
        return {
            "class": self.cls,
            "n": self.n,
            "seed": self.seed,
            "admissible_count": self.admissible_count,
            "admissibility_rate": self.admissibility_rate,
            "max_a2": self.max_a2,
            "max_a3": self.max_a3,
            "bound_a2": self.bound_a2,
            "bound_a3": self.bound_a3,
            "max_fs_ratio": self.max_fs_ratio,
            "violation_count": self.violation_count,
            "violations": self.violations,
        }


def _chunks(n: int, seed: int):
    streams = np.random.SeedSequence(seed).spawn(max(1, -(-n // CHUNK)))
    for k, ss in enumerate(streams):
        size = min(CHUNK, n - k * CHUNK)
        if size > 0:
            yield np.random.Generator(np.random.PCG64(ss)), size


def _record(report: StressReport, kind: str, mask, **columns):
    hits = np.flatnonzero(mask)
    report.violation_count += int(hits.size)
    for i in hits[: max(0, MAX_REPORTED - len(report.violations))]:
        entry = {"kind": kind}
        for name, col in columns.items():
            v = complex(col[i]) if np.iscomplexobj(col) else float(col[i])
            entry[name] = [v.real, v.imag] if isinstance(v, complex) else v
        report.violations.append(entry)


def stress_test(spec: ClassSpec, n: int, seed: int, raise_on_violation: bool = False) -> StressReport:
    """Check |a2|, |a3| bounds and the Carathéodory inequality on n random draws."""
    bounds = class_bounds(spec)
    report = StressReport(spec.label(), n, seed, bound_a2=bounds.a2_bound, bound_a3=bounds.a3_bound)
    nus = [nu_parameter(spec, x) for x in FS_PROBES] + [0.0, 1.0]
    for rng, size in _chunks(n, seed):
        p1, p2 = draw_caratheodory(rng, size)
        a2, a3, q1, q2 = _derive(spec, p1, p2)
        ok = in_body(q1, q2)
        report.admissible_count += int(ok.sum())
        if ok.any():
            report.max_a2 = max(report.max_a2, float(np.abs(a2[ok]).max()))
            report.max_a3 = max(report.max_a3, float(np.abs(a3[ok]).max()))
        _record(report, "a2", ok & (np.abs(a2) > bounds.a2_bound + VIOLATION_TOL), p1=p1, p2=p2, a2=a2)
        _record(report, "a3", ok & (np.abs(a3) > bounds.a3_bound + VIOLATION_TOL), p1=p1, p2=p2, a3=a3)
        for nu in nus:
            _record(report, f"caratheodory_p(nu={nu:.6g})", _carath_excess(p1, p2, nu) > VIOLATION_TOL, p1=p1, p2=p2)
            _record(report, f"caratheodory_q(nu={nu:.6g})", ok & (_carath_excess(q1, q2, nu) > VIOLATION_TOL), q1=q1, q2=q2)
    if raise_on_violation and report.violation_count:
        raise TheoremViolation(f"{report.violation_count} violations for {spec.label()}", report.violations)
    return report


def fekete_szego_stress(spec: ClassSpec, x: float, n: int, seed: int, raise_on_violation: bool = False) -> StressReport:
    """Check the Fekete-Szegő bound at parameter x, plus the Carathéodory inequality it rests on.

    The bound follows from the f side alone, so it is checked on every draw,
    admissible or not.
    """
    bound = fs_bound(spec, x)
    nu = nu_parameter(spec, x)
    bounds = class_bounds(spec)
    report = StressReport(spec.label(), n, seed, bound_a2=bounds.a2_bound, bound_a3=bounds.a3_bound)
    for rng, size in _chunks(n, seed):
        p1, p2 = draw_caratheodory(rng, size)
        a2, a3, q1, q2 = _derive(spec, p1, p2)
        ok = in_body(q1, q2)
        report.admissible_count += int(ok.sum())
        if ok.any():
            report.max_a2 = max(report.max_a2, float(np.abs(a2[ok]).max()))
            report.max_a3 = max(report.max_a3, float(np.abs(a3[ok]).max()))
        value = fs_functional(spec, a2, a3, x)
        report.max_fs_ratio = max(report.max_fs_ratio, float((value / bound).max()))
        _record(report, "fekete_szego", value > bound + VIOLATION_TOL, p1=p1, p2=p2, value=value)
        _record(report, f"caratheodory_p(nu={nu:.6g})", _carath_excess(p1, p2, nu) > VIOLATION_TOL, p1=p1, p2=p2)
    if raise_on_violation and report.violation_count:
        raise TheoremViolation(f"{report.violation_count} violations for {spec.label()}", report.violations)
    return report


def max_modulus_summary(report: StressReport) -> dict:
    """Observed maxima against the bounds (no sharpness is implied)."""
    return {
        "a2_gap": report.bound_a2 - report.max_a2,
        "a3_gap": report.bound_a3 - report.max_a3,
        "a2_ratio": report.max_a2 / report.bound_a2 if report.bound_a2 else math.nan,
        "a3_ratio": report.max_a3 / report.bound_a3 if report.bound_a3 else math.nan,
    }
