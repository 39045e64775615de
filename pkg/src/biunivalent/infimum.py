"""Piecewise infima of ratios built from G(x) = max{1, |eta x - xi|}.

Three functionals of (x, y) on R^2 minus the line x + y = 2 are studied:

    L21:  (G(x) + G(y)) / |2 - x - y|
    L22:  (|2 - y| G(x) + |x| G(y)) / |2 - x - y|
    L23:  (|3 - y| G(x) + |x + 1| G(y)) / |2 - x - y|

:func:`closed_form` evaluates the known piecewise formulas in terms of the knots
gamma = (xi - 1)/eta and rho = (xi + 1)/eta. :func:`oracle_infimum` finds the
infimum numerically and shares no case analysis with the closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoxTooSmall, OnSingularLine

LEMMAS = ("L21", "L22", "L23")
SINGULAR_BAND = 1e-9


@dataclass(frozen=True)
class PiecewiseProblem:
    lemma: str
    xi: float
    eta: float

    def __post_init__(self):
        if self.lemma not in LEMMAS:
            raise ValueError(f"lemma must be one of {LEMMAS}, got {self.lemma!r}")
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")

    @property
    def gamma(self) -> float:
        return (self.xi - 1.0) / self.eta

    @property
    def rho(self) -> float:
        return (self.xi + 1.0) / self.eta


@dataclass(frozen=True)
class InfimumResult:
    value: float
    branch: str
    gamma: float
    rho: float


@dataclass(frozen=True)
class OracleResult:
    value: float
    argmin: tuple | str  # (x, y) or "at-infinity"
    grid_stats: tuple  # (box half-width, levels, final step)


def g_function(x, xi: float, eta: float):
    return np.maximum(1.0, np.abs(eta * np.asarray(x, dtype=float) - xi))


def _weights(lemma: str, x, y):
    """Multipliers (of G(x), of G(y)) in the numerator."""
    if lemma == "L21":
        return np.ones_like(y), np.ones_like(x)
    if lemma == "L22":
        return np.abs(2.0 - y), np.abs(x)
    return np.abs(3.0 - y), np.abs(x + 1.0)


def _h(problem: PiecewiseProblem, x, y):
    wx, wy = _weights(problem.lemma, x, y)
    num = wx * g_function(x, problem.xi, problem.eta) + wy * g_function(y, problem.xi, problem.eta)
    den = np.abs(2.0 - x - y)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(den < SINGULAR_BAND, np.inf, num / den)


def h_function(problem: PiecewiseProblem, x: float, y: float) -> float:
    if abs(2.0 - x - y) < 1e-12:
        raise OnSingularLine(f"x + y = 2 at ({x}, {y})")
    return float(_h(problem, np.float64(x), np.float64(y)))


def closed_form(problem: PiecewiseProblem) -> InfimumResult:
    xi, eta = problem.xi, problem.eta
    gamma, rho = problem.gamma, problem.rho
    if problem.lemma == "L21":
        if xi <= eta:
            value, branch = 1.0 / (1.0 - gamma), "one"
        else:
            value, branch = 1.0 / (rho - 1.0), "two"
    elif problem.lemma == "L22":
        if 1.0 <= xi <= eta:
            value, branch = 1.0 / (1.0 - gamma), "one"
        elif eta <= xi <= 2 * eta - 1:
            value, branch = 1.0 / (rho - 1.0), "two"
        else:
            value, branch = 1.0, "otherwise"
    else:
        if 1.0 - eta <= xi <= eta:
            value, branch = 2.0 / (1.0 - gamma), "one"
        elif eta <= xi <= 3 * eta - 1:
            value, branch = 2.0 / (rho - 1.0), "two"
        else:
            value, branch = 1.0, "otherwise"
    return InfimumResult(float(value), branch, gamma, rho)


def _kinks(problem: PiecewiseProblem):
    """Coordinates where the numerator changes formula, per axis."""
    g, r = problem.gamma, problem.rho
    extra_x = {"L21": (), "L22": (0.0,), "L23": (-1.0,)}[problem.lemma]
    extra_y = {"L21": (), "L22": (2.0,), "L23": (3.0,)}[problem.lemma]
    return np.array((g, r) + extra_x), np.array((g, r) + extra_y)


def _limits_at_infinity(problem: PiecewiseProblem) -> float:
    """Infimum of the values H approaches as |x| or |y| grows without bound.

    G(t)/|t| -> eta, so sending x to infinity with y fixed leaves
    eta * |2 - y| + G(y) for L22 (eta * |3 - y| + G(y) for L23), a
    piecewise-linear function of y whose minimum sits on a kink; symmetrically
    for y. Sending both to infinity together gives at least eta for L21 and
    diverges for L22/L23.
    """
    xi, eta = problem.xi, problem.eta
    kx, ky = _kinks(problem)
    if problem.lemma == "L21":
        return eta
    shift_x = 0.0 if problem.lemma == "L22" else 1.0
    top_y = 2.0 if problem.lemma == "L22" else 3.0
    along_x = eta * np.abs(top_y - ky) + g_function(ky, xi, eta)
    along_y = g_function(kx, xi, eta) + eta * np.abs(kx + shift_x)
    return float(min(along_x.min(), along_y.min()))


def _candidates(problem: PiecewiseProblem):
    """Finite candidate points: every pair of kink coordinates."""
    kx, ky = _kinks(problem)
    X, Y = np.meshgrid(kx, ky)
    return X.ravel(), Y.ravel()


def oracle_infimum(
    problem: PiecewiseProblem,
    box: float = 100.0,
    levels: int = 4,
    base_step: float = 0.25,
) -> OracleResult:
    """Brute-force infimum: refined grid search plus kink points plus limits.

    On each cell cut out by the kink lines H is a ratio whose numerator is
    affine in x for fixed y (and vice versa), so along every axis-parallel
    segment it is monotone or blows up at x + y = 2. The infimum is therefore
    taken at a kink-kink intersection or approached at infinity; the grid
    search runs anyway as an independent net.
    """
    reach = max(abs(problem.gamma), abs(problem.rho)) + 2.0
    if not box > reach:
        raise BoxTooSmall(f"box {box} must exceed {reach:.6g}")
    n = int(round(2 * box / base_step)) + 1
    xs = np.linspace(-box, box, n)
    best, arg = _grid_min(problem, xs, xs)
    step = xs[1] - xs[0]
    for _ in range(levels):
        half = 2 * step
        step /= 10.0
        m = int(round(2 * half / step)) + 1
        lx = np.linspace(arg[0] - half, arg[0] + half, m)
        ly = np.linspace(arg[1] - half, arg[1] + half, m)
        val, where = _grid_min(problem, lx, ly)
        if val < best:
            best, arg = val, where
    cx, cy = _candidates(problem)
    cand = _h(problem, cx, cy)
    i = int(np.argmin(cand))
    if cand[i] < best:
        best, arg = float(cand[i]), (float(cx[i]), float(cy[i]))
    at_inf = _limits_at_infinity(problem)
    result_arg: tuple | str = arg
    if at_inf < best:
        best, result_arg = at_inf, "at-infinity"
    return OracleResult(float(best), result_arg, (box, levels, float(step)))


def _grid_min(problem: PiecewiseProblem, xs: np.ndarray, ys: np.ndarray):
    gx = g_function(xs, problem.xi, problem.eta)[None, :]
    gy = g_function(ys, problem.xi, problem.eta)[:, None]
    X = xs[None, :]
    Y = ys[:, None]
    wx, wy = _weights(problem.lemma, X, Y)
    den = np.abs(2.0 - X - Y)
    num = wx * gx + wy * gy
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.where(den < SINGULAR_BAND, np.inf, num / den)
    k = int(np.argmin(vals))
    r, c = divmod(k, xs.size)
    return float(vals[r, c]), (float(xs[c]), float(ys[r]))
