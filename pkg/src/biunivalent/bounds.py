"""Closed-form bounds on |a2| and |a3| for two bi-univalent classes.

``r_sigma``: f and its inverse g satisfy (1-lam) f(z)/z + lam f'(z) < phi(z).
``bi_starlike``: f and g satisfy z f'(z)/f(z) < phi(z).

With tau = (1+lam)^2/(1+2 lam), the r_sigma bounds split on the sign of
B1^2 - tau B2; the bi_starlike bounds are the same expressions with tau = 1
and lam = 0 for |a2|, and a separate |a3| formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import phi as phimod
from .errors import InternalInconsistency, InvalidLambda
from .infimum import PiecewiseProblem, closed_form
from .phi import PhiProfile

CLASS_FAMILIES = ("r_sigma", "bi_starlike")
AGREEMENT_TOL = 1e-12


@dataclass(frozen=True)
class ClassSpec:
    family: str
    phi: PhiProfile
    lam: float = 0.0

    def __post_init__(self):
        if self.family not in CLASS_FAMILIES:
            raise ValueError(f"class family must be one of {CLASS_FAMILIES}")
        if self.family == "r_sigma":
            _check_lambda(self.lam)
        phimod.validate(self.phi)

    def label(self) -> str:
        if self.family == "r_sigma":
            return f"r_sigma(lambda={self.lam!r}, phi={self.phi.label()})"
        return f"bi_starlike(phi={self.phi.label()})"


@dataclass(frozen=True)
class Comparison:
    name: str
    prior: float | None
    new: float
    note: str = ""

    def as_dict(self):
        return {"name": self.name, "prior": self.prior, "new": self.new, "note": self.note}


@dataclass(frozen=True)
class BoundReport:
    cls: ClassSpec
    b1: float
    b2: float
    tau: float | None
    branch: str
    a2_bound: float
    a3_bound: float
    a3_branch: str
    comparisons: tuple = field(default=())

    def as_dict(self) -> dict:
        return {
            "class": self.cls.family,
            "lambda": self.cls.lam if self.cls.family == "r_sigma" else None,
            "phi": self.cls.phi.label(),
            "b1": self.b1,
            "b2": self.b2,
            "tau": self.tau,
            "branch": self.branch,
            "a2_bound": self.a2_bound,
            "a3_bound": self.a3_bound,
            "a3_branch": self.a3_branch,
            "comparisons": [c.as_dict() for c in self.comparisons],
        }


def _check_lambda(lam):
    if not (isinstance(lam, (int, float)) and math.isfinite(lam) and lam >= 0):
        raise InvalidLambda(f"lambda must be a finite real >= 0, got {lam!r}")


def tau(lam: float) -> float:
    _check_lambda(lam)
    return (1.0 + lam) ** 2 / (1.0 + 2.0 * lam)


def _split(b1: float, scaled_b2: float) -> str:
    """Branch of the case split on scaled_b2 (= tau B2) versus B1^2."""
    if math.isclose(scaled_b2, b1 * b1, rel_tol=1e-12):
        return "boundary"
    return "case_a" if scaled_b2 < b1 * b1 else "case_b"


def _denominator(b1: float, b2: float, t: float, branch: str) -> float:
    if branch == "boundary":
        d = t * b1  # both case denominators reduce to this
    elif branch == "case_b":
        d = t * b2 + t * b1 - b1 * b1
    else:
        d = b1 * b1 - t * b2 + t * b1
    if not d > 0:
        raise InternalInconsistency(f"non-positive bound denominator {d} on {branch}")
    return d


def r_sigma_bounds(lam: float, phi: PhiProfile, with_comparisons: bool = True) -> BoundReport:
    _check_lambda(lam)
    b1, b2 = phimod.coefficients(phi)
    t = tau(lam)
    branch = _split(b1, t * b2)
    d = _denominator(b1, b2, t, branch)
    scale = 1.0 + 2.0 * lam
    a2 = b1 * math.sqrt(b1) / math.sqrt(scale * d)
    a3 = (b1 / scale) * max(b1 * b1 / d, 1.0)
    a3_branch = closed_form(PiecewiseProblem("L22", b2 / b1, b1 / t)).branch
    spec = ClassSpec("r_sigma", phi, float(lam))
    comps = tuple(compare_with_prior(lam, phi)) if with_comparisons else ()
    return BoundReport(spec, b1, b2, t, branch, a2, a3, a3_branch, comps)


def bi_starlike_bounds(phi: PhiProfile) -> BoundReport:
    b1, b2 = phimod.coefficients(phi)
    branch = _split(b1, b2)
    d = _denominator(b1, b2, 1.0, branch)
    a2 = b1 * math.sqrt(b1) / math.sqrt(d)
    a3 = max(b1**3 / d, b1 / 2.0)
    a3_branch = closed_form(PiecewiseProblem("L23", b2 / b1, b1)).branch
    return BoundReport(ClassSpec("bi_starlike", phi), b1, b2, None, branch, a2, a3, a3_branch)


def class_bounds(spec: ClassSpec) -> BoundReport:
    if spec.family == "r_sigma":
        return r_sigma_bounds(spec.lam, spec.phi)
    return bi_starlike_bounds(spec.phi)


def fekete_szego_bound(lam: float, phi: PhiProfile, x: float) -> float:
    """Upper bound on |a3 - x a2^2| over r_sigma(lam, phi)."""
    b1, b2 = phimod.coefficients(phi)
    t = tau(lam)
    return b1 / (1.0 + 2.0 * lam) * max(1.0, abs(x * b1 / t - b2 / b1))


def bi_starlike_fekete_szego_bound(phi: PhiProfile, x: float) -> float:
    """Upper bound on |2 a3 - (x+1) a2^2| over bi_starlike(phi)."""
    b1, b2 = phimod.coefficients(phi)
    return b1 * max(1.0, abs(x * b1 - b2 / b1))


def specialize(lam: float, profile: PhiProfile) -> BoundReport:
    """Explicit formulas for the power and order-beta families.

    Evaluated independently of the general case split and checked against
    :func:`r_sigma_bounds`; a mismatch raises InternalInconsistency.
    """
    _check_lambda(lam)
    if profile.family == "power":
        a = profile["alpha"]
        knot = 1.0 - lam * lam + 2.0 * lam
        if lam <= 1.0 + math.sqrt(2.0):
            a2 = 2 * a / math.sqrt((1 + lam) ** 2 + a * knot)
        else:
            a2 = 2 * a / math.sqrt((1 + lam) ** 2 - a * knot)
        a3 = 2 * a / (1 + 2 * lam)
    elif profile.family == "beta":
        b = profile["beta"]
        if b <= (1 - lam * lam + 2 * lam) / (2 * (1 + 2 * lam)):
            a2 = math.sqrt(2 * (1 - b) / (1 + 2 * lam))
        else:
            a2 = (1 - b) * math.sqrt(2 / (lam * lam + b * (1 + 2 * lam)))
        a3 = 2 * (1 - b) / (1 + 2 * lam)
    else:
        raise ValueError(f"specialize handles power and beta families, not {profile.family!r}")
    general = r_sigma_bounds(lam, profile, with_comparisons=False)
    for name, mine, theirs in (("a2", a2, general.a2_bound), ("a3", a3, general.a3_bound)):
        if abs(mine - theirs) > AGREEMENT_TOL * max(1.0, abs(theirs)):
            raise InternalInconsistency(
                f"{name}: explicit {mine!r} vs general {theirs!r} at lambda={lam}, {profile}"
            )
    return BoundReport(
        general.cls, general.b1, general.b2, general.tau, general.branch, a2, a3, general.a3_branch
    )


def prior_general_a2(lam: float, b1: float, b2: float) -> float | None:
    """Earlier |a2| bound sqrt((B1 + |B2 - B1|)/(1+2 lam)); None when not real."""
    if b2 <= b1:
        radicand = (2 * b1 - b2) / (1 + 2 * lam)
    else:
        radicand = b2 / (1 + 2 * lam)
    return math.sqrt(radicand) if radicand > 0 else None


def compare_with_prior(lam: float, phi: PhiProfile) -> list[Comparison]:
    """Compare the new |a2| bound against earlier bounds; assert it is never worse."""
    _check_lambda(lam)
    b1, b2 = phimod.coefficients(phi)
    new = r_sigma_bounds(lam, phi, with_comparisons=False).a2_bound
    t = tau(lam)
    sign_case = ("tauB2<=B1^2" if t * b2 <= b1 * b1 else "tauB2>=B1^2") + (
        ",B2<=B1" if b2 <= b1 else ",B2>=B1"
    )
    out = []
    prior = prior_general_a2(lam, b1, b2)
    if prior is None:
        out.append(Comparison("prior_general", None, new, f"skipped: 2B1-B2<=0 ({sign_case})"))
    else:
        out.append(Comparison("prior_general", prior, new, sign_case))
    if phi.family == "power":
        a = phi["alpha"]
        p = 2 * a / math.sqrt((1 + lam) ** 2 + a * (1 - lam * lam + 2 * lam))
        out.append(Comparison("prior_power_first_branch", p, new, ""))
    elif phi.family == "beta":
        b = phi["beta"]
        out.append(Comparison("prior_beta_first_branch", math.sqrt(2 * (1 - b) / (1 + 2 * lam)), new, ""))
    for c in out:
        if c.prior is not None and c.new > c.prior + AGREEMENT_TOL:
            raise InternalInconsistency(f"{c.name}: new {c.new!r} exceeds prior {c.prior!r}")
    return out
