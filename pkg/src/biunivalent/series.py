"""Truncated power series for normalized analytic functions.

A series of order N stores the coefficients a_1..a_N of

    f(z) = a_1 z + a_2 z**2 + ... + a_N z**N + O(z**(N+1))

so there is never a constant term. Products of two such series start at z**2;
they are kept in the same representation with a leading zero. Coefficients are
stored in extended precision (``np.clongdouble``): inverse coefficients grow
roughly like Catalan numbers, so at order 10 a complex128 rounding of g_10
alone can exceed 1e-12. Evaluation returns ordinary complex values.

Note on the fourth inverse coefficient: the expansion of f^{-1} is

    w - a_2 w**2 + (2 a_2**2 - a_3) w**3 - (5 a_2**3 - 5 a_2 a_3 + a_4) w**4 + ...

The w**4 term carries 5 a_2**3, not 5 a_2**2: the truncated Koebe function
z + 2z**2 + 3z**3 + 4z**4 inverts to w - 2w**2 + 5w**3 - 14w**4, which only the
cubic form reproduces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized, OrderMismatch

DEFAULT_ORDER = 10


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients a_1..a_N (``coeffs[0]`` is a_1)."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=np.clongdouble).reshape(-1)
        if arr.size == 0:
            raise ValueError("a truncated series needs at least one coefficient")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def normalized(cls, *tail, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        """z + tail[0] z**2 + tail[1] z**3 + ..., zero-padded to ``order``."""
        if len(tail) > order - 1:
            raise ValueError(f"{len(tail)} tail coefficients do not fit order {order}")
        coeffs = np.zeros(order, dtype=np.clongdouble)
        coeffs[0] = 1.0
        coeffs[1 : 1 + len(tail)] = tail
        return cls(coeffs)

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls.normalized(order=order)

    @property
    def order(self) -> int:
        return int(self.coeffs.size)

    @property
    def is_normalized(self) -> bool:
        return self.coeffs[0] == 1.0

    def coefficient(self, n: int) -> complex:
        """a_n with the usual 1-based index; zero beyond the truncation order."""
        if n < 1:
            raise IndexError("coefficients start at a_1")
        return complex(self.coeffs[n - 1]) if n <= self.order else 0j

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in self.coeffs.astype(complex)[::-1]:
            acc = (acc + c) * z
        return acc

    def __repr__(self):
        terms = ", ".join(f"{c:.6g}" for c in self.coeffs)
        return f"TruncatedSeries([{terms}])"


def _check_orders(a: TruncatedSeries, b: TruncatedSeries) -> int:
    if a.order != b.order:
        raise OrderMismatch(f"orders differ: {a.order} vs {b.order}")
    return a.order


def _mul_raw(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    # a, b index k holds the z**(k+1) coefficient
    full = np.convolve(a, b)  # index k holds z**(k+2)
    out = np.zeros(n, dtype=full.dtype)
    m = min(n - 1, full.size)
    out[1 : 1 + m] = full[:m]
    return out


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at z**N."""
    n = _check_orders(a, b)
    return TruncatedSeries(_mul_raw(a.coeffs, b.coeffs, n))


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Coefficients of outer(inner(z)) through z**N."""
    n = _check_orders(outer, inner)
    return TruncatedSeries(_compose_raw(outer.coeffs, inner.coeffs, n))


def _compose_raw(outer: np.ndarray, inner: np.ndarray, n: int) -> np.ndarray:
    base = inner.astype(np.clongdouble)
    result = np.zeros(n, dtype=np.clongdouble)
    power = base.copy()
    for k in range(n):
        result += outer[k] * power
        if k + 1 < n:
            power = _mul_raw(power, base, n)
    return result


def invert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse g with f(g(w)) = w through w**N.

    Solved one coefficient at a time: with a_1 = 1 the w**n coefficient of
    f(g(w)) is g_n plus terms in g_2..g_{n-1} only.
    """
    if not f.is_normalized:
        raise NotNormalized(f"inversion needs a_1 = 1, got {f.coeffs[0]}")
    n = f.order
    a = f.coeffs
    g = np.zeros(n, dtype=np.clongdouble)
    g[0] = 1.0
    for k in range(1, n):
        g[k] = -_compose_raw(a, g, n)[k]
    return TruncatedSeries(g)


def derivative(f: TruncatedSeries) -> np.ndarray:
    """Term-wise derivative as coefficients c_0..c_{N-1} (constant term first)."""
    return (f.coeffs * np.arange(1, f.order + 1)).astype(complex)


def from_taylor(constant_coeffs, order: int) -> TruncatedSeries:
    """Drop the constant term of c_0 + c_1 z + ... and keep z..z**order."""
    c = np.zeros(order, dtype=np.clongdouble)
    tail = np.asarray(constant_coeffs, dtype=np.clongdouble)[1 : order + 1]
    c[: tail.size] = tail
    return TruncatedSeries(c)
