"""Closed-form analytic element families with exact singularity data and
exact monodromy, plus the special-function identities they satisfy.

Branch tracking convention: a positive (counterclockwise) loop of z around a
singularity alpha advances arg(z - alpha) by +2*pi. For the normalized power
branch (1 - z/alpha)**(-a) this multiplies the value by exp(-2*pi*i*a); the
recorded orientation sign ORIENTATION_SIGN = -1 expresses that the exponent
carries a minus sign under this convention (asserted empirically by the test
suite at a = 1/3 against a numerical loop).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import holonomic
from .continuation import (
    DEFAULT_POLICY,
    AnalyticElement,
    GermElement,
    RecurrenceRelation,
    StepPolicy,
)
from .errors import DegenerateCaseError, DomainError, PathClearanceError
from .germs import CoeffSeries, Germ
from .numerics import DEFAULT_CONFIG, QuadratureConfig, complex_gamma, segment_integral_singular
from .paths import Path

__all__ = [
    "ORIENTATION_SIGN",
    "PowerBranch",
    "AlgebroGeometricElement",
    "PolylogElement",
    "AlgebraicElement",
    "Hypergeometric2F1",
    "SumElement",
    "ConstantElement",
    "DeltaElement",
    "delta_branch",
    "power_sigma_exact",
    "polylog_eval",
    "polylog_delta_exact",
    "algebro_geometric_sigma",
    "vandermonde_recurrence",
    "elliptic_K_norm",
    "modular_delta_closed_form",
    "hyp2f1",
    "euler_2F1",
    "hyp2f1_delta",
    "fractional_integral",
    "binomial_series",
    "polylog_series",
    "hyp2f1_series",
    "element_descriptor",
    "element_from_descriptor",
]

#: orientation sign s: one positive loop multiplies (1-z/alpha)^(-a) by exp(s*2*pi*i*a)
ORIENTATION_SIGN = -1


def _track_log(wfun: Callable[[complex], complex], z_from: complex, z_to: complex,
               log_from: complex, max_arg: float = 1.0) -> complex:
    """Continue log(wfun(z)) from z_from to z_to along the straight chord,
    subdividing until each ratio's principal argument is small; never reduces
    the accumulated argument modulo 2*pi."""
    stack = [(z_from, z_to)]
    log_cur = log_from
    z_cur = z_from
    w_cur = wfun(z_cur)
    while stack:
        a, b = stack.pop()
        w_b = wfun(b)
        if w_b == 0:
            raise PathClearanceError("branch-tracking path hits a zero of the tracked factor")
        ratio = w_b / w_cur
        if abs(cmath.phase(ratio)) > max_arg or abs(ratio - 1.0) > 0.7:
            mid = (a + b) / 2.0
            if mid == a or mid == b:
                raise PathClearanceError("branch tracking cannot resolve the chord")
            stack.append((mid, b))
            stack.append((a, mid))
            continue
        log_cur += cmath.log(ratio)
        z_cur, w_cur = b, w_b
    return log_cur


def _walk_log(wfun, vertices, log_start):
    log = log_start
    for a, b in zip(vertices[:-1], vertices[1:]):
        log = _track_log(wfun, a, b, log)
    return log


def _as_fraction(x: complex, max_den: int = 10 ** 6):
    """Fraction equal to x (within float resolution), or None."""
    x = complex(x)
    if x.imag != 0.0:
        return None
    fr = Fraction(x.real).limit_denominator(max_den)
    if abs(float(fr) - x.real) > 1e-15 * max(1.0, abs(x.real)):
        return None
    return fr


def _pochhammer_ratio_series(a: complex, n_terms: int) -> np.ndarray:
    """Coefficients (a)_n / n!."""
    c = np.empty(n_terms, dtype=complex)
    c[0] = 1.0
    for n in range(1, n_terms):
        c[n] = c[n - 1] * (a + n - 1) / n
    return c


def binomial_series(a: complex, alpha: complex, n_terms: int) -> CoeffSeries:
    """Taylor coefficients at 0 of (1 - z/alpha)**(-a)."""
    c = _pochhammer_ratio_series(a, n_terms) * (1.0 / complex(alpha)) ** np.arange(n_terms)
    return CoeffSeries(c, abs(alpha))


class PowerBranch(AnalyticElement):
    """(1 - z/alpha)**(-a) with a tracked branch phase.

    Integrable at alpha iff Re a < 1.
    """

    kind = "zoo-closed-form"

    def __init__(self, alpha: complex, a: complex, anchor: complex = 0.0,
                 log_w: complex | None = None):
        self.alpha = complex(alpha)
        self.a = complex(a)
        self.anchor = complex(anchor)
        if log_w is None:
            log_w = cmath.log(1.0 - self.anchor / self.alpha)
        self.log_w = log_w

    @property
    def singularities(self):
        return (self.alpha,)

    @property
    def integrable(self) -> bool:
        return self.a.real < 1.0

    def monodromy_multiplier(self) -> complex:
        return cmath.exp(ORIENTATION_SIGN * 2j * math.pi * self.a)

    def _w(self, z: complex) -> complex:
        return 1.0 - z / self.alpha

    def value(self, z: complex, policy: StepPolicy = DEFAULT_POLICY) -> complex:
        log_w = _track_log(self._w, self.anchor, complex(z), self.log_w)
        return cmath.exp(-self.a * log_w)

    def continued(self, path: Path, policy: StepPolicy = DEFAULT_POLICY) -> "PowerBranch":
        if path.vertices[0] != self.anchor:
            log0 = _track_log(self._w, self.anchor, path.vertices[0], self.log_w)
        else:
            log0 = self.log_w
        log_end = _walk_log(self._w, path.vertices, log0)
        return PowerBranch(self.alpha, self.a, path.vertices[-1], log_end)

    def germ(self, center: complex, n_terms: int, policy: StepPolicy = DEFAULT_POLICY) -> Germ:
        center = complex(center)
        log_w0 = _track_log(self._w, self.anchor, center, self.log_w)
        w0 = cmath.exp(log_w0)
        # (1 - (center+t)/alpha)^(-a) = w0^(-a) (1 - t/(alpha w0))^(-a)
        coeffs = cmath.exp(-self.a * log_w0) * _pochhammer_ratio_series(self.a, n_terms) \
            * (1.0 / (self.alpha * w0)) ** np.arange(n_terms)
        return Germ(center, coeffs, abs(center - self.alpha), 0.0)

    def series(self, n_terms: int) -> CoeffSeries:
        return binomial_series(self.a, self.alpha, n_terms)

    def recurrence(self) -> holonomic.Recurrence:
        """Exact coefficient recurrence alpha (n+1) c_{n+1} - (n+a) c_n = 0."""
        P = np.array([[-self.a, -1.0], [self.alpha, self.alpha]], dtype=complex)
        return holonomic.Recurrence(P=P, residual=0.0)

    def series_exact(self, n_terms: int):
        """Rational Taylor coefficients when the parameters are rational."""
        a = _as_fraction(self.a)
        alpha = _as_fraction(self.alpha)
        if a is None or alpha is None:
            return None
        out = [Fraction(1)]
        for n in range(1, n_terms):
            out.append(out[-1] * (a + n - 1) / (n * alpha))
        return out

def power_sigma_exact(p: PowerBranch, k: int):
    """Scalar prefactors of Sigma^k p and of Delta Sigma^k p.

    Sigma^k multiplies the branch by lambda**k with lambda =
    exp(ORIENTATION_SIGN * 2*pi*i*a); the delta prefactor is
    lambda**k (lambda - 1).
    """
    lam = p.monodromy_multiplier()
    return lam ** k, lam ** k * (lam - 1.0)


class ConstantElement(AnalyticElement):
    """A constant function; no singularities, trivial monodromy."""

    kind = "zoo-closed-form"

    def __init__(self, c: complex):
        self.c = complex(c)

    @property
    def singularities(self):
        return ()

    def value(self, z, policy=DEFAULT_POLICY):
        return self.c

    def continued(self, path, policy=DEFAULT_POLICY):
        return self

    def germ(self, center, n_terms, policy=DEFAULT_POLICY):
        coeffs = np.zeros(max(n_terms, 1), dtype=complex)
        coeffs[0] = self.c
        return Germ(complex(center), coeffs, math.inf, 0.0)

    def series(self, n_terms):
        coeffs = np.zeros(max(n_terms, 1), dtype=complex)
        coeffs[0] = self.c
        return CoeffSeries(coeffs, math.inf)


class SumElement(AnalyticElement):
    """Pointwise sum of elements (used for multi-singularity factors)."""

    kind = "zoo-closed-form"

    def __init__(self, parts: Sequence[AnalyticElement]):
        self.parts = tuple(parts)

    @property
    def singularities(self):
        out = []
        for p in self.parts:
            for s in p.singularities:
                if all(abs(s - t) > 1e-12 for t in out):
                    out.append(s)
        return tuple(out)

    def value(self, z, policy=DEFAULT_POLICY):
        return sum(p.value(z, policy) for p in self.parts)

    def continued(self, path, policy=DEFAULT_POLICY):
        return SumElement([p.continued(path, policy) for p in self.parts])

    def germ(self, center, n_terms, policy=DEFAULT_POLICY):
        germs = [p.germ(center, n_terms, policy) for p in self.parts]
        n = min(len(g) for g in germs)
        coeffs = sum(g.coefficients[:n] for g in germs)
        return Germ(complex(center), coeffs,
                    min(g.trust_radius for g in germs),
                    sum(g.err_bound for g in germs))

    def series(self, n_terms):
        seriess = [p.series(n_terms) for p in self.parts]
        n = min(len(s) for s in seriess)
        coeffs = sum(s.coefficients[:n] for s in seriess)
        return CoeffSeries(coeffs, min(s.declared_radius for s in seriess))

    def series_exact(self, n_terms: int):
        parts = []
        for p in self.parts:
            fn = getattr(p, "series_exact", None)
            got = fn(n_terms) if fn else None
            if got is None:
                return None
            parts.append(got)
        return [sum(v) for v in zip(*parts)]

    def part_at(self, alpha: complex) -> AnalyticElement:
        """The summand singular at alpha (the others have no monodromy there)."""
        for p in self.parts:
            if any(abs(s - complex(alpha)) < 1e-9 for s in p.singularities):
                return p
        raise DomainError(f"no summand is singular at {alpha}")


class AlgebroGeometricElement(AnalyticElement):
    """(z-alpha)**(-a) * (log(z-alpha)/(2*pi*i))**n * phi(z), phi a polynomial."""

    kind = "zoo-closed-form"

    def __init__(self, alpha: complex, a: complex, n: int, phi: Sequence[complex] = (1.0,),
                 anchor: complex = 0.0, log_w: complex | None = None):
        self.alpha = complex(alpha)
        self.a = complex(a)
        if n < 0:
            raise ValueError("log power n must be >= 0")
        self.n = int(n)
        self.phi = np.asarray(phi, dtype=complex)
        if len(self.phi) > 5:
            raise ValueError("phi is restricted to degree <= 4")
        self.anchor = complex(anchor)
        if log_w is None:
            log_w = cmath.log(self.anchor - self.alpha)
        self.log_w = log_w

    @property
    def singularities(self):
        return (self.alpha,)

    def monodromy_multiplier(self) -> complex:
        return cmath.exp(ORIENTATION_SIGN * 2j * math.pi * self.a)

    def _w(self, z: complex) -> complex:
        return z - self.alpha

    def _phi(self, z: complex) -> complex:
        return complex(np.polynomial.polynomial.polyval(z, self.phi))

    def value(self, z: complex, policy: StepPolicy = DEFAULT_POLICY) -> complex:
        log_w = _track_log(self._w, self.anchor, complex(z), self.log_w)
        ell = log_w / (2j * math.pi)
        return cmath.exp(-self.a * log_w) * ell ** self.n * self._phi(z)

    def continued(self, path: Path, policy: StepPolicy = DEFAULT_POLICY) -> "AlgebroGeometricElement":
        if path.vertices[0] != self.anchor:
            log0 = _track_log(self._w, self.anchor, path.vertices[0], self.log_w)
        else:
            log0 = self.log_w
        log_end = _walk_log(self._w, path.vertices, log0)
        return AlgebroGeometricElement(self.alpha, self.a, self.n, self.phi,
                                       path.vertices[-1], log_end)

    def branch_value(self, k: int, z: complex) -> complex:
        """Closed-form value of Sigma^k of this element at z (principal anchor)."""
        return algebro_geometric_sigma(self, k, z)

    def germ(self, center: complex, n_terms: int, policy: StepPolicy = DEFAULT_POLICY) -> Germ:
        center = complex(center)
        log_w0 = _track_log(self._w, self.anchor, center, self.log_w)
        w0 = center - self.alpha
        idx = np.arange(n_terms)
        # (w0 + t)^(-a) = w0^(-a) (1 + t/w0)^(-a)
        pow_coeffs = cmath.exp(-self.a * log_w0) * _pochhammer_ratio_series(self.a, n_terms) \
            * (-1.0 / w0) ** idx
        # log(w0 + t) = log w0 + log(1 + t/w0)
        log_coeffs = np.zeros(n_terms, dtype=complex)
        log_coeffs[0] = log_w0
        log_coeffs[1:] = -((-1.0 / w0) ** idx[1:]) / idx[1:]
        total = pow_coeffs
        ell = log_coeffs / (2j * math.pi)
        for _ in range(self.n):
            total = np.convolve(total, ell)[:n_terms]
        phi_shift = np.polynomial.polynomial.polyval(
            center, self.phi) if len(self.phi) == 1 else None
        if phi_shift is not None:
            total = total * phi_shift
        else:
            from .germs import taylor_shift
            phi_local = taylor_shift(
                np.concatenate([self.phi, np.zeros(max(0, n_terms - len(self.phi)), complex)]),
                center)[:n_terms]
            total = np.convolve(total, phi_local)[:n_terms]
        return Germ(center, total, abs(center - self.alpha), 0.0)


def algebro_geometric_sigma(el: AlgebroGeometricElement, k: int, z: complex) -> complex:
    """Closed-form k-th branch: lambda^k (z-alpha)^(-a) (ell + k)^n phi(z),
    ell = log(z-alpha)/(2*pi*i) continued from the element's anchor."""
    log_w = _track_log(el._w, el.anchor, complex(z), el.log_w)
    ell = log_w / (2j * math.pi)
    lam = el.monodromy_multiplier()
    return lam ** k * cmath.exp(-el.a * log_w) * (ell + k) ** el.n * el._phi(z)


def polylog_series(k: int, n_terms: int) -> CoeffSeries:
    """Taylor coefficients at 0 of Li_k."""
    c = np.zeros(n_terms, dtype=complex)
    for n in range(1, n_terms):
        c[n] = 1.0 / float(n) ** k
    return CoeffSeries(c, 1.0)


def polylog_recurrence(k: int) -> holonomic.Recurrence:
    """Exact recurrence n (n+1)^k h_{n+1} - n^{k+1} h_n = 0 (valid for n >= 0)."""
    p1 = np.polynomial.polynomial.polypow(np.array([1.0, 1.0]), k)
    p1 = np.polynomial.polynomial.polymul(np.array([0.0, 1.0]), p1)
    p0 = np.zeros(k + 2)
    p0[k + 1] = -1.0
    deg = k + 1
    P = np.zeros((2, deg + 1), dtype=complex)
    P[0, : len(p0)] = p0
    P[1, : len(p1)] = p1
    return holonomic.Recurrence(P=P, residual=0.0)


class PolylogElement(AnalyticElement):
    """The polylogarithm Li_k (normalized variant li_k = -Li_k / (2*pi*i)).

    Branch record: the number of positive loops taken around the branch point
    at 1; each adds the exact monodromy increment.
    """

    kind = "zoo-closed-form"

    def __init__(self, k: int, normalized: bool = False, loops_around_one: int = 0,
                 anchor: complex = 0.0, log_w: complex | None = None):
        if k < 1:
            raise ValueError("polylog index k must be >= 1")
        self.k = int(k)
        self.normalized = bool(normalized)
        self.loops = int(loops_around_one)
        # k = 1 is a plain logarithm and supports full open-path tracking
        self.anchor = complex(anchor)
        self.log_w = cmath.log(1.0 - self.anchor) if log_w is None else log_w

    @property
    def singularities(self):
        # 1 is the branch point of the principal branch; 0 becomes singular on
        # the other branches, so paths steer around it as well.
        return (1.0, 0.0)

    def _principal(self, z: complex, config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
        return _polylog_principal(self.k, complex(z), config)

    def value(self, z: complex, policy: StepPolicy = DEFAULT_POLICY) -> complex:
        if self.k == 1:
            v = -_track_log(lambda u: 1.0 - u, self.anchor, complex(z), self.log_w)
        else:
            v = self._principal(z)
            if self.loops:
                v += self.loops * polylog_delta_exact(self.k, z)
        if self.normalized:
            v = -v / (2j * math.pi)
        return v

    def continued(self, path: Path, policy: StepPolicy = DEFAULT_POLICY) -> "PolylogElement":
        if self.k == 1:
            wfun = lambda u: 1.0 - u
            if path.vertices[0] != self.anchor:
                log0 = _track_log(wfun, self.anchor, path.vertices[0], self.log_w)
            else:
                log0 = self.log_w
            log_end = _walk_log(wfun, path.vertices, log0)
            return PolylogElement(1, self.normalized, self.loops,
                                  path.vertices[-1], log_end)
        if path.vertices[0] != path.vertices[-1]:
            raise DomainError("closed-form polylog continuation supports closed loops "
                              "for k >= 2; use the germ route for open paths")
        if path.winding_number(0.0) != 0:
            raise DomainError("polylog branch record only tracks loops around 1")
        w = path.winding_number(1.0)
        return PolylogElement(self.k, self.normalized, self.loops + w)

    def germ(self, center: complex, n_terms: int, policy: StepPolicy = DEFAULT_POLICY) -> Germ:
        g = _polylog_germ(self.k, complex(center), n_terms)
        if self.loops:
            delta = _log_power_germ(complex(center), self.k - 1, n_terms)
            coeffs = g.coefficients + self.loops * (-2j * math.pi) * delta \
                / math.factorial(self.k - 1)
            g = Germ(g.center, coeffs, g.trust_radius, g.err_bound)
        if self.normalized:
            g = Germ(g.center, -g.coefficients / (2j * math.pi), g.trust_radius, g.err_bound)
        return g

    def series(self, n_terms: int) -> CoeffSeries:
        s = polylog_series(self.k, n_terms)
        if self.loops:
            raise DomainError("no Taylor series at 0 off the principal branch")
        if self.normalized:
            return CoeffSeries(-s.coefficients / (2j * math.pi), s.declared_radius)
        return s

    def recurrence(self) -> holonomic.Recurrence:
        return polylog_recurrence(self.k)


def _polylog_principal(k: int, z: complex, config: QuadratureConfig) -> complex:
    if z == 0:
        return 0.0 + 0.0j
    if k == 1:
        return -cmath.log(1.0 - z)
    if abs(z) <= 0.5:
        total = 0.0 + 0.0j
        term = z
        n = 1
        while True:
            inc = term / float(n) ** k
            total += inc
            if abs(inc) < 1e-18 * max(1.0, abs(total)):
                break
            n += 1
            term *= z
            if n > 4000:
                break
        return total
    # integral recursion from a series anchor on the same ray
    z0 = 0.45 * z / abs(z)
    base = _polylog_principal(k, z0, config)
    f = lambda u: _polylog_principal(k - 1, u, config) / u
    return base + segment_integral_singular(f, z0, z, config)


def polylog_eval(k: int, z: complex, loops_around_one: int = 0,
                 config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Li_k(z): principal values by series (|z| <= 0.5) or by the integral
    recursion Li_k(z) = Li_k(z0) + int_{z0}^z Li_{k-1}(u) du/u; continued
    branches add the exact monodromy increment per recorded loop."""
    v = _polylog_principal(k, complex(z), config)
    if loops_around_one:
        v += loops_around_one * polylog_delta_exact(k, z)
    return v


def polylog_delta_exact(k: int, z: complex) -> complex:
    """Delta_1 Li_k(z) = -2*pi*i (log z)**(k-1) / (k-1)! (principal log branch
    as continued from the monodromy base region)."""
    z = complex(z)
    if z == 0:
        raise DomainError("polylog delta undefined at z = 0")
    if k == 1:
        return -2j * math.pi
    return -2j * math.pi * cmath.log(z) ** (k - 1) / math.factorial(k - 1)


def _polylog_germ(k: int, center: complex, n_terms: int) -> Germ:
    """Principal-branch germ of Li_k at |center| < 1 via the integral recursion
    applied to exact local series."""
    if abs(center) >= 1.0:
        raise DomainError("polylog germ anchor must satisfy |center| < 1")
    idx = np.arange(n_terms)
    # Li_1 = -log(1-z): at center: -log(1-c) + sum_{n>=1} ((1-c)^-n / n) t^n
    coeffs = np.zeros(n_terms, dtype=complex)
    coeffs[0] = -cmath.log(1.0 - center)
    coeffs[1:] = (1.0 / (1.0 - center)) ** idx[1:] / idx[1:]
    radius = min(abs(1.0 - center), abs(center)) if center != 0 else abs(1.0 - center)
    if center == 0:
        return Germ(0.0, polylog_series(k, n_terms).coefficients.astype(complex), 1.0, 0.0)
    inv_u = (-1.0 / center) ** idx / center
    for m in range(2, k + 1):
        integrand = np.convolve(coeffs, inv_u)[:n_terms]
        new = np.zeros(n_terms, dtype=complex)
        new[1:] = integrand[:-1] / idx[1:]
        new[0] = _polylog_principal(m, center, DEFAULT_CONFIG)
        coeffs = new
    return Germ(center, coeffs, radius, 0.0)


def _log_power_germ(center: complex, power: int, n_terms: int) -> np.ndarray:
    """Coefficients at center of (log z)**power (principal branch)."""
    idx = np.arange(n_terms)
    log_c = np.zeros(n_terms, dtype=complex)
    log_c[0] = cmath.log(center)
    log_c[1:] = -((-1.0 / center) ** idx[1:]) / idx[1:]
    out = np.zeros(n_terms, dtype=complex)
    out[0] = 1.0
    for _ in range(power):
        out = np.convolve(out, log_c)[:n_terms]
    return out


class AlgebraicElement(AnalyticElement):
    """A branch of an algebraic function P(z, w(z)) = 0, tracked along paths
    by a predictor-corrector with per-chord Newton polishing."""

    kind = "zoo-closed-form"

    def __init__(self, w_polys: Sequence[Sequence[complex]], base_point: complex,
                 w0: complex, singularities: Sequence[complex]):
        # P(z, w) = sum_j p_j(z) w^j; w_polys[j] = ascending z-coefficients of p_j
        self.w_polys = tuple(np.asarray(p, dtype=complex) for p in w_polys)
        self.base_point = complex(base_point)
        self._sing = tuple(complex(s) for s in singularities)
        w0 = complex(w0)
        w0 = self._newton(self.base_point, w0)
        if abs(self._p(self.base_point, w0)) > 1e-10:
            raise DomainError("w0 does not polish to a root at the base point")
        self.w0 = w0

    @property
    def degree(self) -> int:
        return len(self.w_polys) - 1

    @property
    def singularities(self):
        return self._sing

    def _wcoeffs(self, z: complex) -> np.ndarray:
        return np.array([np.polynomial.polynomial.polyval(z, p) for p in self.w_polys])

    def _p(self, z: complex, w: complex) -> complex:
        return complex(np.polynomial.polynomial.polyval(w, self._wcoeffs(z)))

    def _newton(self, z: complex, w: complex, iters: int = 50) -> complex:
        c = self._wcoeffs(z)
        dc = c[1:] * np.arange(1, len(c))
        for _ in range(iters):
            f = np.polynomial.polynomial.polyval(w, c)
            df = np.polynomial.polynomial.polyval(w, dc)
            if df == 0:
                break
            step = f / df
            w -= step
            if abs(step) < 1e-15 * max(1.0, abs(w)):
                break
        return w

    def _roots(self, z: complex) -> np.ndarray:
        c = self._wcoeffs(z)
        return np.roots(c[::-1])

    def _advance(self, z_from: complex, z_to: complex, w: complex) -> complex:
        stack = [(z_from, z_to)]
        z_cur, w_cur = z_from, w
        while stack:
            a, b = stack.pop()
            w_try = self._newton(b, w_cur)
            roots = self._roots(b)
            dists = np.abs(roots - w_try)
            order = np.argsort(dists)
            separated = len(roots) < 2 or dists[order[1]] > 1e-6
            moved_ok = abs(w_try - w_cur) < 0.51 * (dists[order[1]] if len(roots) > 1 else math.inf) \
            if len(roots) > 1 else True
            if not separated or not moved_ok or abs(self._p(b, w_try)) > 1e-9:
                mid = (a + b) / 2.0
                if mid == a or mid == b:
                    raise PathClearanceError("root tracking stalled near a ramification point")
                stack.append((mid, b))
                stack.append((a, mid))
                continue
            z_cur, w_cur = b, w_try
        return w_cur

    def value(self, z: complex, policy: StepPolicy = DEFAULT_POLICY) -> complex:
        return self._advance(self.base_point, complex(z), self.w0)

    def continued(self, path: Path, policy: StepPolicy = DEFAULT_POLICY) -> "AlgebraicElement":
        w = self.w0
        z = self.base_point
        if path.vertices[0] != z:
            w = self._advance(z, path.vertices[0], w)
        for a, b in zip(path.vertices[:-1], path.vertices[1:]):
            w = self._advance(a, b, w)
        el = AlgebraicElement.__new__(AlgebraicElement)
        el.w_polys = self.w_polys
        el.base_point = path.vertices[-1]
        el._sing = self._sing
        el.w0 = w
        return el

    def germ(self, center: complex, n_terms: int, policy: StepPolicy = DEFAULT_POLICY) -> Germ:
        """Local expansion by trapezoid Cauchy extraction on a small circle."""
        center = complex(center)
        w_c = self._advance(self.base_point, center, self.w0)
        radius = min(abs(center - s) for s in self._sing)
        rc = 0.35 * radius
        n_nodes = max(4 * n_terms, 64)
        vals = np.empty(n_nodes, dtype=complex)
        w = w_c
        pts = center + rc * np.exp(2j * math.pi * np.arange(n_nodes + 1) / n_nodes)
        for j in range(n_nodes):
            w = self._advance(pts[j - 1] if j else center, pts[j], w)
            vals[j] = w
        coeffs = np.fft.fft(vals)[:n_terms] / n_nodes
        coeffs /= rc ** np.arange(n_terms)
        return Germ(center, coeffs, radius, 1e-14 * (1.0 + abs(w_c)))


def hyp2f1_series(a: complex, b: complex, c: complex, n_terms: int) -> CoeffSeries:
    """Gauss series coefficients (a)_n (b)_n / ((c)_n n!)."""
    coeffs = np.empty(n_terms, dtype=complex)
    coeffs[0] = 1.0
    for n in range(1, n_terms):
        coeffs[n] = coeffs[n - 1] * (a + n - 1) * (b + n - 1) / ((c + n - 1) * n)
    return CoeffSeries(coeffs, 1.0)


def hyp2f1_recurrence(a: complex, b: complex, c: complex) -> holonomic.Recurrence:
    """(n+1)(n+c) h_{n+1} - (n+a)(n+b) h_n = 0 (hypergeometric ODE in recurrence form)."""
    P = np.zeros((2, 3), dtype=complex)
    P[0] = [-a * b, -(a + b), -1.0]
    P[1] = [c, 1.0 + c, 1.0]
    return holonomic.Recurrence(P=P, residual=0.0)


class Hypergeometric2F1(AnalyticElement):
    """Gauss hypergeometric function F(a, b, c; z), radius 1, F(..., 0) = 1."""

    kind = "zoo-closed-form"

    def __init__(self, a: complex, b: complex, c: complex):
        self.a = complex(a)
        self.b = complex(b)
        self.c = complex(c)
        if self.c.imag == 0 and self.c.real <= 0 and self.c.real == int(self.c.real):
            raise DomainError("c must not be a non-positive integer")
        self._germ_el = None

    @property
    def singularities(self):
        return (1.0, 0.0)

    def series(self, n_terms: int) -> CoeffSeries:
        return hyp2f1_series(self.a, self.b, self.c, n_terms)

    def recurrence(self) -> holonomic.Recurrence:
        return hyp2f1_recurrence(self.a, self.b, self.c)

    def _as_germ_element(self, policy: StepPolicy = DEFAULT_POLICY) -> GermElement:
        if self._germ_el is None:
            series = self.series(192)
            self._germ_el = GermElement.from_series(
                series, self.singularities, center=0.45,
                recurrence=self.recurrence())
        return self._germ_el

    def value(self, z: complex, policy: StepPolicy = DEFAULT_POLICY) -> complex:
        z = complex(z)
        if abs(z) <= 0.8:
            total = 0.0 + 0.0j
            term = 1.0 + 0.0j
            n = 0
            while True:
                total += term
                if abs(term) < 1e-17 * max(1.0, abs(total)) and n > 4:
                    break
                term *= (self.a + n) * (self.b + n) / ((self.c + n) * (n + 1.0)) * z
                n += 1
                if n > 20000:
                    break
            return total
        return self._as_germ_element(policy).value(z, policy)

    def continued(self, path: Path, policy: StepPolicy = DEFAULT_POLICY) -> AnalyticElement:
        return self._as_germ_element(policy).continued(path, policy)

    def germ(self, center: complex, n_terms: int, policy: StepPolicy = DEFAULT_POLICY) -> Germ:
        return self._as_germ_element(policy).germ(center, n_terms, policy)


def hyp2f1(a: complex, b: complex, c: complex, z: complex) -> complex:
    """F(a, b, c; z) by series inside |z| <= 0.8, by germ continuation beyond."""
    return Hypergeometric2F1(a, b, c).value(z)


def euler_2F1(a: complex, b: complex, c: complex, z: complex,
              config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Euler integral form: Gamma(c)/(Gamma(b) Gamma(c-b)) *
    int_0^1 u^(b-1) (1-u)^(c-b-1) (1-z u)^(-a) du; requires Re b > 0 and
    Re(c-b) > 0."""
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if b.real <= 0 or (c - b).real <= 0:
        raise DomainError("euler integral needs Re b > 0 and Re(c-b) > 0")
    pref = complex_gamma(c) / (complex_gamma(b) * complex_gamma(c - b))

    def f(x, d0, d1):
        # u = d0 and 1-u = d1 exactly on the quadrature grid
        u = d0 if d0 <= d1 else 1.0 - d1
        return d0 ** (b - 1.0) * d1 ** (c - b - 1.0) * (1.0 - z * u) ** (-a)

    from .numerics import unit_integral_singular
    return pref * unit_integral_singular(f, config)


def hyp2f1_delta(a: complex, b: complex, c: complex, z: complex) -> complex:
    """Monodromy of F(a, b, c; .) around 1 in connection-formula form:

        Delta_1 F = Gamma(c) Gamma(a+b-c) / (Gamma(a) Gamma(b))
                    * (e^(2*pi*i*(c-a-b)) - 1)
                    * (1-z)^(c-a-b) F(c-a, c-b, c-a-b+1; 1-z)

    i.e. the second Kummer solution at 1 times its connection coefficient and
    its own monodromy multiplier, with principal (1-z)^(c-a-b). This equals
    the (z-1)^(c-a-b) form when that power's branch is carried over from
    arg(z-1) = arg(1-z) + pi without re-principalization (measured against a
    numerical loop and frozen here). Degenerate integer c-a-b is not covered
    (use numerical monodromy there).
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    rho = c - a - b
    if abs(rho.imag) < 1e-12 and abs(rho.real - round(rho.real)) < 1e-9:
        raise DegenerateCaseError("c-a-b is an integer: logarithmic case")
    pref = complex_gamma(c) * complex_gamma(a + b - c) / (
        complex_gamma(a) * complex_gamma(b))
    mult = cmath.exp(2j * math.pi * rho) - 1.0
    tail = Hypergeometric2F1(c - a, c - b, rho + 1.0).value(1.0 - z)
    return pref * mult * (1.0 - z) ** rho * tail


def vandermonde_recurrence(a: complex, n: int) -> RecurrenceRelation:
    """Order-(n+1) branch recurrence of the algebro-geometric local model
    (z-alpha)^(-a) (log(z-alpha)/2*pi*i)^n phi.

    Branches are lambda^k (ell+k)^n with lambda = exp(s*2*pi*i*a); expressing
    (ell+n+1)^n lambda^(n+1) in the basis {(ell+k)^n lambda^k, k <= n} is a
    Vandermonde-style linear solve in the monomial basis.
    """
    lam = cmath.exp(ORIENTATION_SIGN * 2j * math.pi * complex(a))
    size = n + 1
    M = np.zeros((size, size), dtype=complex)
    t = np.zeros(size, dtype=complex)
    for l in range(size):
        p = n - l  # 0**0 = 1 convention
        for kk in range(size):
            M[l, kk] = lam ** kk * math.comb(n, l) * (1.0 if p == 0 else float(kk) ** p)
        t[l] = lam ** size * math.comb(n, l) * (1.0 if p == 0 else float(size) ** p)
    coeffs = np.linalg.solve(M, t)
    residual = float(np.abs(M @ coeffs - t).max())
    tag = "rational-like" if abs(lam - 1.0) < 1e-12 else "complex"
    return RecurrenceRelation(order=size, coefficients=coeffs, residual=residual,
                              field_tag=tag)


def elliptic_K_norm(ksq: complex, config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """(2/pi) * int_0^1 du / sqrt((1-u^2)(1-ksq u^2)) for ksq off [1, inf).

    The endpoint factor is evaluated from the exact distance 1-u supplied by
    the quadrature grid, so the square-root singularity at u = 1 costs no
    accuracy.
    """
    ksq = complex(ksq)
    if ksq.imag == 0 and ksq.real >= 1.0:
        raise DomainError("ksq must avoid the cut [1, inf)")

    def f(u, d0, d1):
        # 1 - u^2 = (1-u)(1+u) with 1-u = d1 exactly
        return 1.0 / cmath.sqrt(d1 * (1.0 + u) * (1.0 - ksq * u * u))

    from .numerics import unit_integral_singular
    return 2.0 / math.pi * unit_integral_singular(
        lambda x, d0, d1: f(d0 if d0 <= d1 else 1.0 - d1, d0, d1), config)


def modular_delta_closed_form(z: complex, config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Monodromy around 1 of the Hadamard square of (1-z)^(-1/2), in closed
    integral form.

    On the segment u = 1 + t(z-1) the three factors of u(1-u)(u-z) split into
    t(1-t) and a branch-consistent sqrt(u), giving

        Delta(z) = (2/(pi*i)) * int_0^1 dt / (sqrt(t(1-t)) sqrt(1 + t(z-1)))

    The prefactor includes the square of the single-factor monodromy
    multiplier (exp(-i*pi) - 1)^2 = 4 picked up by both branch jumps.
    """
    z = complex(z)
    if z == 0.0 or z == 1.0:
        raise DomainError("degenerate z for the closed-form monodromy integral")

    def f(x, d0, d1):
        t = d0 if d0 <= d1 else 1.0 - d1
        return 1.0 / (math.sqrt(d0 * d1) * cmath.sqrt(1.0 + t * (z - 1.0)))

    from .numerics import unit_integral_singular
    val = unit_integral_singular(f, config)
    return 2.0 / (math.pi * 1j) * val


def fractional_integral(f, base: complex, order: complex, z: complex,
                        config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Riemann-Liouville fractional integral
    I_order(f)(z) = (1/Gamma(order)) int_base^z (z-u)^(order-1) f(u) du
    along the straight segment, with endpoint-singular quadrature at u = z
    when Re order < 1. Requires Re order > 0 and f regular on the path."""
    order = complex(order)
    if order.real <= 0:
        raise DomainError("fractional integral requires Re order > 0")
    base = complex(base)
    z = complex(z)
    if z == base:
        return 0.0 + 0.0j
    fv = f.value if isinstance(f, AnalyticElement) else f
    span = z - base
    log_span = cmath.log(span)

    def g(x, d0, d1):
        # u = base + t*span; (z-u) = (1-t)*span with 1-t = d1 exactly
        t = d0 if d0 <= d1 else 1.0 - d1
        u = base + t * span
        return cmath.exp((order - 1.0) * (math.log(d1) + log_span)) * fv(u)

    from .numerics import unit_integral_singular
    val = unit_integral_singular(g, config) * span
    return val / complex_gamma(order)


# ---------------------------------------------------------------------------
# delta elements (the operands of the integral convolution)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeltaElement:
    """scale * Delta_alpha Sigma_alpha^k (base); exact closed-form branches.

    These are the objects paired by the integral convolution: they know their
    own values anywhere and their decomposition on a convolution segment
    starting at the singularity.
    """

    base: AnalyticElement
    alpha: complex
    k: int = 0
    scale: complex = 1.0

    @property
    def singularities(self):
        return self.base.singularities

    def is_zero(self) -> bool:
        if isinstance(self.base, ConstantElement):
            return True
        if self.scale == 0:
            return True
        part = self._part()
        return part is None

    def _part(self):
        b = self.base
        if isinstance(b, SumElement):
            try:
                b = b.part_at(self.alpha)
            except DomainError:
                return None
        if isinstance(b, (PowerBranch, AlgebroGeometricElement, PolylogElement)):
            return b
        return None

    def prefactor(self) -> complex:
        """Scalar multiplier for families whose delta is proportional to the
        base branch (power type)."""
        part = self._part()
        if isinstance(part, (PowerBranch, AlgebroGeometricElement)) and \
                not (isinstance(part, AlgebroGeometricElement) and part.n > 0):
            lam = part.monodromy_multiplier()
            return self.scale * lam ** self.k * (lam - 1.0)
        raise DomainError("no scalar prefactor for this family")

    def value(self, z: complex) -> complex:
        """Closed-form value of the delta branch at z (principal anchors)."""
        part = self._part()
        if part is None:
            return 0.0 + 0.0j
        if isinstance(part, PowerBranch):
            return self.prefactor() * part.value(z)
        if isinstance(part, AlgebroGeometricElement):
            lam = part.monodromy_multiplier()
            return self.scale * (algebro_geometric_sigma(part, self.k + 1, z)
                                 - algebro_geometric_sigma(part, self.k, z))
        if isinstance(part, PolylogElement):
            v = polylog_delta_exact(part.k, z)
            if part.normalized:
                v = -v / (2j * math.pi)
            return self.scale * v
        raise DomainError("unsupported delta family")

    # -- convolution-segment evaluators ------------------------------------
    def left_fn(self, e: complex, log_w0: complex):
        """Evaluator t -> value at u = alpha + t (e - alpha) where
        1 - u/alpha = t * w0, log_w0 = tracked log(1 - e/alpha)."""
        part = self._part()
        if part is None:
            return lambda t, log_t: 0.0 + 0.0j
        alpha = self.alpha
        if isinstance(part, PowerBranch):
            pref = self.prefactor()
            a = part.a
            return lambda t, log_t: pref * cmath.exp(-a * (log_t + log_w0))
        if isinstance(part, AlgebroGeometricElement):
            # u - alpha = t (e - alpha); log(u-alpha) = log t + log(e-alpha),
            # the base log carried over from the element's own branch anchor
            lam = part.monodromy_multiplier()
            a = part.a
            n = part.n
            kk = self.k
            sc = self.scale
            log_base = _track_log(part._w, part.anchor, e, part.log_w)
            span = e - alpha

            def fn(t, log_t):
                u = alpha + t * span
                lw = log_t + log_base
                ell = lw / (2j * math.pi)
                phi = part._phi(u)
                return sc * cmath.exp(-a * lw) * phi * (
                    lam ** (kk + 1) * (ell + kk + 1) ** n - lam ** kk * (ell + kk) ** n)
            return fn
        if isinstance(part, PolylogElement):
            m = part.k
            norm = -1.0 / (2j * math.pi) if part.normalized else 1.0
            sc = self.scale
            span = e - alpha

            def fn(t, log_t):
                u = alpha + t * span
                return sc * norm * polylog_delta_exact(m, u)
            return fn
        raise DomainError("unsupported delta family for convolution")

    def right_fn(self, beta: complex, z: complex, alpha_left: complex,
                 e: complex, log_w0: complex):
        """Evaluator t -> value at v = z/u, u = alpha_left + t (e - alpha_left);
        1 - v/beta = (1-t) * alpha_left * w0 / u."""
        part = self._part()
        if part is None:
            return lambda t, log_1mt, u: 0.0 + 0.0j
        if isinstance(part, PowerBranch):
            pref = self.prefactor()
            b = part.a
            log_al = cmath.log(alpha_left)
            return lambda t, log_1mt, u: pref * cmath.exp(
                -b * (log_1mt + log_al + log_w0 - cmath.log(u)))
        if isinstance(part, (AlgebroGeometricElement, PolylogElement)):
            sc_val = self.value

            def fn(t, log_1mt, u):
                return sc_val(z / u)
            return fn
        raise DomainError("unsupported delta family for convolution")


def delta_branch(F: AnalyticElement, alpha: complex, k: int = 0,
                 scale: complex = 1.0) -> DeltaElement:
    """The element scale * Delta_alpha Sigma_alpha^k F."""
    return DeltaElement(base=F, alpha=complex(alpha), k=int(k), scale=complex(scale))


# ---------------------------------------------------------------------------
# descriptors (JSON-serializable element specifications)
# ---------------------------------------------------------------------------

def _c2(x: complex) -> list:
    x = complex(x)
    return [x.real, x.imag]


def element_descriptor(el: AnalyticElement) -> dict:
    """{family, parameters} form used in experiment configs."""
    if isinstance(el, PowerBranch):
        return {"family": "power-branch",
                "parameters": {"alpha": _c2(el.alpha), "a": _c2(el.a)}}
    if isinstance(el, AlgebroGeometricElement):
        return {"family": "algebro-geometric",
                "parameters": {"alpha": _c2(el.alpha), "a": _c2(el.a), "n": el.n,
                               "phi": [_c2(c) for c in el.phi]}}
    if isinstance(el, PolylogElement):
        return {"family": "polylog",
                "parameters": {"k": el.k, "normalized": el.normalized}}
    if isinstance(el, Hypergeometric2F1):
        return {"family": "hypergeometric-2f1",
                "parameters": {"a": _c2(el.a), "b": _c2(el.b), "c": _c2(el.c)}}
    if isinstance(el, SumElement):
        return {"family": "sum",
                "parameters": {"parts": [element_descriptor(p) for p in el.parts]}}
    if isinstance(el, ConstantElement):
        return {"family": "constant", "parameters": {"value": _c2(el.c)}}
    raise DomainError(f"no descriptor for {type(el).__name__}")


def element_from_descriptor(d: dict) -> AnalyticElement:
    fam = d["family"]
    p = d["parameters"]

    def cc(v):
        return complex(v[0], v[1])

    if fam == "power-branch":
        return PowerBranch(cc(p["alpha"]), cc(p["a"]))
    if fam == "algebro-geometric":
        return AlgebroGeometricElement(cc(p["alpha"]), cc(p["a"]), p["n"],
                                       [cc(c) for c in p["phi"]])
    if fam == "polylog":
        return PolylogElement(p["k"], p.get("normalized", False))
    if fam == "hypergeometric-2f1":
        return Hypergeometric2F1(cc(p["a"]), cc(p["b"]), cc(p["c"]))
    if fam == "sum":
        return SumElement([element_from_descriptor(q) for q in p["parts"]])
    if fam == "constant":
        return ConstantElement(cc(p["value"]))
    raise DomainError(f"unknown element family {fam!r}")
