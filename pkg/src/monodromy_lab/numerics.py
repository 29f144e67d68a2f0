"""Quadrature and scalar special-value primitives.

All operations are pure functions of their arguments and safe to call
concurrently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ContourSingularityError, NonIntegrableEndpointError, PoleError

__all__ = [
    "QuadratureConfig",
    "circle_integral",
    "segment_integral_singular",
    "unit_integral_singular",
    "path_integral_smooth",
    "complex_gamma",
    "agm",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Knobs for the two quadrature rules.

    circle_nodes: equispaced node count on circular contours (trapezoid rule).
    de_level: maximum tanh-sinh refinement level (h = 2**-level).
    abs_tol / rel_tol: stopping tolerances for level doubling.
    """

    circle_nodes: int = 512
    de_level: int = 10
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12

    def __post_init__(self):
        if self.circle_nodes < 16:
            raise ValueError("circle_nodes must be >= 16")
        if self.de_level < 3:
            raise ValueError("de_level must be >= 3")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")


DEFAULT_CONFIG = QuadratureConfig()


def circle_integral(f: Callable[[complex], complex], center: complex, radius: float,
                    config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """(1/2*pi*i) * contour integral of f on the positively oriented circle.

    Equispaced trapezoid rule; spectrally accurate for integrands analytic in a
    neighbourhood of the circle.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    n = config.circle_nodes
    theta = 2.0 * np.pi * np.arange(n) / n
    e = np.exp(1j * theta)
    total = 0.0 + 0.0j
    for phase in e:
        u = center + radius * phase
        v = f(u)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ContourSingularityError(u)
        total += v * phase
    return radius * total / n


@lru_cache(maxsize=32)
def _ts_grid(level: int):
    """tanh-sinh nodes for the unit interval (0, 1), abscissas stored as the
    distance to the nearer endpoint so callers can place points without
    cancellation. Returns (h, [(dist, weight), ...]) for t = j*h, j >= 1; the
    t = 0 node is handled by the caller. The grid runs deep into the corners
    (distances down to ~1e-290) so that integrable endpoint singularities of
    any strength are resolved; consumers stop early once contributions become
    negligible."""
    h = 1.0 / (1 << level)
    nodes = []
    j = 1
    while True:
        t = j * h
        s = math.sinh(t)
        c = math.cosh(t)
        y = (math.pi / 2.0) * s
        if y > 330.0:  # dist underflows
            break
        dist = 1.0 / (1.0 + math.exp(2.0 * y))  # (1 - tanh(y)) / 2
        # cosh(y)**2 = (e^y + e^-y)^2/4; write the weight via dist to avoid overflow
        w = math.pi * c * dist / (1.0 + math.exp(-2.0 * y))
        if dist < 1e-290 or w < 1e-300:
            break
        nodes.append((dist, w))
        j += 1
    return h, tuple(nodes)


def _ts_level_sum(g, level: int):
    """(h * sum of weights*g, tail_resolved) over the level's grid;
    g(x, dist_lo, dist_hi).

    Works outward from the interval center and stops once several consecutive
    node contributions are negligible against the running total. When the
    grid is exhausted while contributions are still significant the endpoint
    behaviour is not integrable-resolvable and tail_resolved is False."""
    h, nodes = _ts_grid(level)
    total = (math.pi / 4.0) * g(0.5, 0.5, 0.5)
    negligible = 0
    last_inc = 0.0
    for dist, w in nodes:
        inc = w * g(dist, dist, 1.0 - dist)          # lower node x = dist
        inc += w * g(1.0 - dist, 1.0 - dist, dist)   # upper node x = 1-dist
        total += inc
        last_inc = abs(inc)
        if last_inc <= 1e-18 * abs(total):
            negligible += 1
            if negligible >= 4:
                break
        else:
            negligible = 0
    resolved = negligible >= 4 or last_inc <= 1e-10 * max(abs(total), 1e-300)
    return h * total, resolved


def unit_integral_singular(fn, config: QuadratureConfig = DEFAULT_CONFIG,
                           raise_on_divergence: bool = True) -> complex:
    """Integral over (0, 1) of fn(x, dist_to_0, dist_to_1).

    The endpoint distances are supplied exactly (far below the float spacing
    of the endpoints themselves), so integrands written in terms of them
    resolve arbitrarily strong integrable singularities to near machine
    precision. Levels are doubled until two consecutive refinements agree
    (Cauchy test); steadily growing refinements raise
    NonIntegrableEndpointError.
    """
    prev = None
    diffs = []
    for level in range(3, config.de_level + 1):
        cur, resolved = _ts_level_sum(fn, level)
        if raise_on_divergence and not resolved:
            raise NonIntegrableEndpointError(
                "endpoint contributions do not decay: non-integrable singularity")
        if prev is not None:
            d = abs(cur - prev)
            diffs.append(d)
            if d <= max(config.abs_tol, config.rel_tol * abs(cur)):
                return cur
        prev = cur
    if raise_on_divergence and len(diffs) >= 2 and diffs[-1] > diffs[-2] \
            and abs(prev) > 1e8:
        raise NonIntegrableEndpointError("partial sums not Cauchy")
    return prev


def segment_integral_singular(f: Callable[[complex], complex], a: complex, b: complex,
                              config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Integral of f along the straight segment [a, b].

    Double-exponential (tanh-sinh) substitution clustering nodes at both
    endpoints; converges for integrable endpoint singularities u**-sigma,
    sigma < 1, and for logarithmic ones. Levels are doubled until two
    consecutive refinements agree (Cauchy test); if the refinements drift
    apart instead, the endpoint is deemed non-integrable.

    Since f receives only the point u, the achievable accuracy at a nonzero
    singular endpoint is capped by the float spacing there (about 1e-8 of the
    local scale for a 1/sqrt singularity); integrands written against
    unit_integral_singular's endpoint distances do not have this cap.
    """
    if a == b:
        return 0.0 + 0.0j
    span = b - a

    def g(x, dlo, dhi):
        # u placed from the nearer endpoint: both expressions are identical in
        # exact arithmetic; picking the nearer end avoids cancellation.
        if dlo <= dhi:
            u = a + span * dlo
            if u == a:  # distance below the float floor of this endpoint
                return 0.0
        else:
            u = b - span * dhi
            if u == b:
                return 0.0
        v = f(u)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise NonIntegrableEndpointError(
                f"non-finite integrand at u={u} on segment [{a}, {b}]")
        return v

    return unit_integral_singular(g, config) * span


def path_integral_smooth(f: Callable[[complex], complex], points, nodes_per_panel: int = 24) -> complex:
    """Integral of a smooth f along a polyline via per-panel Gauss-Legendre.

    Used for closed loops and deflection arcs where the integrand is analytic
    (no endpoint singularities); `points` is the vertex sequence.
    """
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    total = 0.0 + 0.0j
    for p, q in zip(points[:-1], points[1:]):
        mid = (p + q) / 2.0
        half = (q - p) / 2.0
        for xi, wi in zip(x, w):
            total += wi * f(mid + half * xi) * half
    return total


# Lanczos approximation, g = 7, n = 9; ~15 significant digits on the
# right half-plane, extended by the reflection formula.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def complex_gamma(z: complex) -> complex:
    """Gamma function for complex arguments.

    Raises PoleError at non-positive integers. Accurate to ~13+ significant
    digits for |z| <= 20.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise PoleError(f"gamma pole at z={z}")
    if z.real < 0.5:
        # reflection: gamma(z) gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * complex_gamma(1.0 - z))
    z -= 1.0
    x = _LANCZOS_C[0]
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        x += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


def agm(a: complex, b: complex, tol: float = 1e-15) -> complex:
    """Arithmetic-geometric mean (principal square roots)."""
    a = complex(a)
    b = complex(b)
    for _ in range(64):
        if abs(a - b) <= tol * max(1.0, abs(a)):
            break
        a, b = (a + b) / 2.0, cmath.sqrt(a * b)
    return (a + b) / 2.0
