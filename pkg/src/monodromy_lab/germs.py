"""Truncated power-series germs.

A CoeffSeries is a coefficient sequence at the origin; a Germ is a truncated
Taylor expansion at an arbitrary complex center carrying a trust radius and an
accumulated error estimate. Both are immutable values; every operation here is
pure.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path as FsPath

import numpy as np

from .errors import OutOfDiskError, StepViolationError

__all__ = [
    "CoeffSeries",
    "Germ",
    "hadamard_coeffs",
    "germ_eval",
    "germ_eval_tail_estimate",
    "recenter",
    "taylor_shift",
    "radius_estimate",
    "save_coeffs",
    "load_coeffs",
]

#: default truncation for series whose singularity sits on the unit circle
M_UNIT_CIRCLE = 4096
#: default truncation elsewhere
M_DEFAULT = 256

#: recentering step bound as a fraction of the trust radius
THETA_DEFAULT = 0.4


def _as_coeff_array(coefficients) -> np.ndarray:
    arr = np.asarray(coefficients, dtype=complex)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("coefficients must be a non-empty 1-D sequence")
    return arr


@dataclass(frozen=True)
class CoeffSeries:
    """Coefficient sequence A_0..A_{M-1} with a declared convergence radius."""

    coefficients: np.ndarray
    declared_radius: float = math.inf

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _as_coeff_array(self.coefficients))
        if self.declared_radius <= 0:
            raise ValueError("declared_radius must be positive")

    def __len__(self):
        return len(self.coefficients)

    def eval(self, z: complex) -> complex:
        return complex(np.polynomial.polynomial.polyval(z, self.coefficients))


@dataclass(frozen=True)
class Germ:
    """Truncated Taylor expansion at `center`, trusted on |z-center| < trust_radius."""

    center: complex
    coefficients: np.ndarray
    trust_radius: float
    err_bound: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _as_coeff_array(self.coefficients))
        if not (self.trust_radius > 0):
            raise ValueError("trust_radius must be positive")
        if self.err_bound < 0:
            raise ValueError("err_bound must be non-negative")

    def __len__(self):
        return len(self.coefficients)

    def with_radius(self, r: float) -> "Germ":
        return Germ(self.center, self.coefficients, r, self.err_bound)


def hadamard_coeffs(F: CoeffSeries, G: CoeffSeries) -> CoeffSeries:
    """Coefficientwise product, truncated to the shorter factor."""
    m = min(len(F), len(G))
    return CoeffSeries(F.coefficients[:m] * G.coefficients[:m],
                       F.declared_radius * G.declared_radius)


def germ_eval(g: Germ, z: complex) -> complex:
    """Horner evaluation of the truncated sum at z inside the trust disk."""
    w = complex(z) - g.center
    if abs(w) >= g.trust_radius:
        raise OutOfDiskError(
            f"|z-center| = {abs(w):.4g} >= trust_radius = {g.trust_radius:.4g}")
    return complex(np.polynomial.polynomial.polyval(w, g.coefficients))


def germ_eval_tail_estimate(g: Germ, z: complex) -> float:
    """Heuristic truncation-tail bound for germ_eval at z: geometric
    extrapolation of the last retained coefficient."""
    w = abs(complex(z) - g.center)
    if w >= g.trust_radius:
        raise OutOfDiskError("tail estimate requested outside trust disk")
    ratio = w / g.trust_radius
    last = abs(g.coefficients[-1]) * w ** (len(g) - 1)
    return last * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf


def taylor_shift(coefficients: np.ndarray, d: complex) -> np.ndarray:
    """Coefficients of p(w + d) given those of p(w) (degree preserved).

    Diagonal form of repeated Horner synthetic division, O(M^2) with O(M)
    vector operations: term_m[k] = C(k+m, k) a_{k+m} d^m accumulated over m.
    """
    a = _as_coeff_array(coefficients)
    if d == 0:
        return a.copy()
    m_len = len(a)
    b = a.astype(complex, copy=True)
    term = a.astype(complex, copy=True)
    for m in range(1, m_len):
        k = np.arange(m_len - m)
        term = term[1:] * ((k + 1.0) / m) * d
        b[: m_len - m] += term
    return b


def recenter(g: Germ, c_new: complex, theta: float = THETA_DEFAULT) -> Germ:
    """Taylor-shift the germ to a new center inside the step-policy disk.

    The new trust radius is the conservative trust_radius - |step|;
    continuation refreshes it from singularity distances. err_bound grows by
    the shift's truncation estimate.
    """
    d = complex(c_new) - g.center
    step = abs(d)
    if step > theta * g.trust_radius:
        raise StepViolationError(
            f"step {step:.4g} exceeds theta*trust_radius = {theta * g.trust_radius:.4g}")
    if step == 0:
        return g
    coeffs = taylor_shift(g.coefficients, d)
    new_radius = g.trust_radius - step
    # first dropped order of the shifted series, geometrically extrapolated
    tail = abs(g.coefficients[-1]) * step ** (len(g) - 1) * len(g)
    return Germ(c_new, coeffs, new_radius, g.err_bound + tail)


def radius_estimate(s: CoeffSeries) -> float:
    """Cauchy-Hadamard root-test estimate of the convergence radius.

    Uses the tail third of the coefficients; returns math.inf when the tail
    vanishes (polynomial).
    """
    a = s.coefficients
    m = len(a)
    if m < 16:
        raise ValueError("radius_estimate needs at least 16 coefficients")
    tail = np.abs(a[2 * m // 3:])
    nz = np.nonzero(tail > 0.0)[0]
    if len(nz) == 0:
        return math.inf
    idx = 2 * m // 3 + nz
    roots = np.abs(a[idx]) ** (1.0 / idx)
    limsup = roots.max()
    if limsup == 0.0:
        return math.inf
    return 1.0 / limsup


def save_coeffs(path, series: CoeffSeries) -> None:
    """Write a coefficient cache file: CSV with header n,re,im."""
    p = FsPath(path)
    with open(p, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "re", "im"])
        for n, c in enumerate(series.coefficients):
            w.writerow([n, repr(float(c.real)), repr(float(c.imag))])


def load_coeffs(path, declared_radius: float = math.inf) -> CoeffSeries:
    """Read a coefficient cache file written by save_coeffs."""
    rows = []
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if header[:3] != ["n", "re", "im"]:
            raise ValueError(f"bad coefficient cache header: {header}")
        for row in r:
            rows.append((int(row[0]), float(row[1]), float(row[2])))
    rows.sort()
    coeffs = np.array([re + 1j * im for _, re, im in rows], dtype=complex)
    return CoeffSeries(coeffs, declared_radius)
