"""Ma-Minda target functions phi(z) = 1 + B1 z + B2 z**2 + ...

Each built-in family knows its closed form, its first two Taylor coefficients
and a decidable test for membership in the (open) image phi(D). ``custom``
profiles carry only (B1, B2): enough for the coefficient bounds, not for
subordination tests.

Textual syntax (used by the CLI)::

    janowski:A=1,B=-1   power:alpha=0.5   beta:beta=0.25   sqrt   custom:b1=2,b2=1.5
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    B1NotPositive,
    HypothesisViolated,
    InvalidProfile,
    NoClosedForm,
    NoRegionPredicate,
)

FAMILIES = ("janowski", "power", "beta", "sqrt", "custom")

_PARAM_NAMES = {
    "janowski": ("A", "B"),
    "power": ("alpha",),
    "beta": ("beta",),
    "sqrt": (),
    "custom": ("b1", "b2"),
}


@dataclass(frozen=True)
class PhiProfile:
    family: str
    params: tuple = ()

    def __getitem__(self, name):
        return dict(self.params)[name]

    @property
    def b1(self) -> float:
        return coefficients(self)[0]

    @property
    def b2(self) -> float:
        return coefficients(self)[1]

    @property
    def has_region(self) -> bool:
        return self.family != "custom"

    def label(self) -> str:
        """Round-trips through :func:`parse_profile`."""
        if not self.params:
            return self.family
        body = ",".join(f"{k}={_fmt(v)}" for k, v in self.params)
        return f"{self.family}:{body}"

    def __str__(self):
        return self.label()


def _fmt(v) -> str:
    if isinstance(v, complex):
        return repr(v)
    return repr(float(v))


def janowski(A: float, B: float) -> PhiProfile:
    return PhiProfile("janowski", (("A", float(A)), ("B", float(B))))


def power(alpha: float) -> PhiProfile:
    """((1+z)/(1-z))**alpha, strongly starlike target of order alpha."""
    return PhiProfile("power", (("alpha", float(alpha)),))


def order_beta(beta: float) -> PhiProfile:
    """(1 + (1-2 beta) z)/(1 - z), starlike target of order beta."""
    return PhiProfile("beta", (("beta", float(beta)),))


def sqrt_lemniscate() -> PhiProfile:
    return PhiProfile("sqrt")


def custom(b1: float, b2) -> PhiProfile:
    b2 = complex(b2) if isinstance(b2, complex) else float(b2)
    return PhiProfile("custom", (("b1", float(b1)), ("b2", b2)))


def validate(profile: PhiProfile) -> None:
    """Raise on the first violated invariant; return None when the profile is usable."""
    fam = profile.family
    if fam not in FAMILIES:
        raise InvalidProfile(f"unknown family {fam!r}")
    names = tuple(k for k, _ in profile.params)
    if names != _PARAM_NAMES[fam]:
        raise InvalidProfile(f"{fam} expects parameters {_PARAM_NAMES[fam]}, got {names}")
    for k, v in profile.params:
        if not np.isfinite(v):
            raise InvalidProfile(f"{k} must be finite, got {v}")
    if fam == "janowski":
        A, B = profile["A"], profile["B"]
        if not (-1.0 <= B < A <= 1.0):
            raise InvalidProfile(f"janowski needs -1 <= B < A <= 1, got A={A}, B={B}")
    elif fam == "power":
        a = profile["alpha"]
        if not (0.0 < a <= 1.0):
            raise InvalidProfile(f"power needs 0 < alpha <= 1, got alpha={a}")
    elif fam == "beta":
        b = profile["beta"]
        if not (0.0 <= b < 1.0):
            raise InvalidProfile(f"beta needs 0 <= beta < 1, got beta={b}")
    elif fam == "custom":
        b1, b2 = profile["b1"], profile["b2"]
        if not b1 > 0:
            raise B1NotPositive(f"B1 must be positive, got {b1}")
        if isinstance(b2, complex) and b2.imag != 0.0:
            raise HypothesisViolated(f"B2 must be real, got {b2}")


def coefficients(profile: PhiProfile) -> tuple[float, float]:
    """(B1, B2) of the Taylor expansion at the origin."""
    validate(profile)
    fam = profile.family
    if fam == "janowski":
        A, B = profile["A"], profile["B"]
        return A - B, -B * (A - B)
    if fam == "power":
        a = profile["alpha"]
        return 2.0 * a, 2.0 * a * a
    if fam == "beta":
        c = 2.0 * (1.0 - profile["beta"])
        return c, c
    if fam == "sqrt":
        return 0.5, -0.125
    b2 = profile["b2"]
    return profile["b1"], float(b2.real if isinstance(b2, complex) else b2)


def evaluate(profile: PhiProfile, z):
    """phi(z) from the closed form (principal branches)."""
    validate(profile)
    z = np.asarray(z, dtype=complex)
    fam = profile.family
    if fam == "janowski":
        A, B = profile["A"], profile["B"]
        return (1 + A * z) / (1 + B * z)
    if fam == "power":
        return ((1 + z) / (1 - z)) ** profile["alpha"]
    if fam == "beta":
        return (1 + (1 - 2 * profile["beta"]) * z) / (1 - z)
    if fam == "sqrt":
        return np.sqrt(1 + z)
    raise NoClosedForm("custom profiles carry only B1, B2")


def region_margin(profile: PhiProfile, w):
    """Signed distance-like margin to the boundary of phi(D); positive inside.

    Exact Euclidean distance for half-planes, disks and sectors. For the
    lemniscate lobe it is the first-order estimate (1 - |w^2 - 1|)/|2w|,
    capped by Re w; its sign is exact.
    """
    validate(profile)
    w = np.asarray(w, dtype=complex)
    fam = profile.family
    if fam == "custom":
        raise NoRegionPredicate("custom profiles have no region predicate")
    if fam == "beta":
        return w.real - profile["beta"]
    if fam == "janowski":
        A, B = profile["A"], profile["B"]
        if B == -1.0:
            return w.real - (1 - A) / 2
        centre = (1 - A * B) / (1 - B * B)
        radius = (A - B) / (1 - B * B)
        return radius - np.abs(w - centre)
    if fam == "power":
        half = profile["alpha"] * math.pi / 2
        slack = half - np.abs(np.angle(w))
        return np.where(slack >= -math.pi / 2, np.abs(w) * np.sin(slack), -np.abs(w))
    level = 1.0 - np.abs(w * w - 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        dist = np.where(np.abs(w) > 0, level / (2 * np.abs(w)), 0.0)
    return np.minimum(dist, w.real)


def region_contains(profile: PhiProfile, w):
    """True iff w lies in the open set phi(D); boundary points are outside."""
    if profile.family == "sqrt":
        w = np.asarray(w, dtype=complex)
        return (np.abs(w * w - 1.0) < 1.0) & (w.real > 0)
    if profile.family == "power":
        w = np.asarray(w, dtype=complex)
        half = profile["alpha"] * math.pi / 2
        return (np.abs(w) > 0) & (np.abs(np.angle(w)) < half)
    return region_margin(profile, w) > 0


def parse_profile(text: str) -> PhiProfile:
    """Parse ``family[:k=v,...]`` and validate the result."""
    text = text.strip()
    fam, _, body = text.partition(":")
    fam = {"order_beta": "beta", "sqrt_lemniscate": "sqrt"}.get(fam, fam)
    if fam not in FAMILIES:
        raise InvalidProfile(f"unknown phi family {fam!r} in {text!r}")
    values = {}
    if body:
        for item in body.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                raise InvalidProfile(f"malformed phi parameter {item!r} in {text!r}")
            try:
                values[key.strip()] = float(val)
            except ValueError:
                raise InvalidProfile(f"non-numeric value for {key.strip()!r} in {text!r}") from None
    expected = _PARAM_NAMES[fam]
    if set(values) != set(expected):
        raise InvalidProfile(f"{fam} expects parameters {expected}, got {tuple(values)}")
    profile = PhiProfile(fam, tuple((k, values[k]) for k in expected))
    validate(profile)
    return profile
