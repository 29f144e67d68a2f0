"""Analytic continuation of germs and closed-form elements, monodromy
operators, integrability testing, and recurrence detection on branch tables.

Continuation of a series germ regenerates local expansions from a linear ODE
attached to the germ (fitted to, and verified against, its coefficient
sequence; see `holonomic`). A bare truncated germ cannot be wound around a
singularity: Taylor-shift chains are exact polynomial algebra and come back
unchanged, so requesting a winding continuation without an ODE raises.
Closed-form zoo elements continue by branch-phase tracking instead.
"""

from __future__ import annotations

import abc
import cmath
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import holonomic
from .errors import AccuracyLossError, OutOfDiskError, PathClearanceError
from .germs import CoeffSeries, Germ, germ_eval
from .paths import Path

__all__ = [
    "StepPolicy",
    "AnalyticElement",
    "GermElement",
    "BranchTable",
    "RecurrenceRelation",
    "continue_germ",
    "value_at",
    "sigma_k",
    "build_branch_table",
    "integrability_check",
    "recurrence_detect",
    "germ_sub",
    "loop_radius",
    "default_base",
]


@dataclass(frozen=True)
class StepPolicy:
    """Continuation step policy.

    theta: step length as a fraction of the distance to the nearest obstacle.
    clearance_factor: minimum path-to-singularity distance, as a fraction of
        the path length.
    local_terms: length of the local expansion regenerated at each step.
    eval_fraction: germs are only evaluated within this fraction of their
        trust radius; farther targets are reached by recentering.
    drift_ceiling: abort when the accumulated overlap drift exceeds this.
    """

    theta: float = 0.4
    clearance_factor: float = 1e-3
    local_terms: int = 64
    eval_fraction: float = 0.5
    drift_ceiling: float = 1e-6


DEFAULT_POLICY = StepPolicy()


class AnalyticElement(abc.ABC):
    """A function family supporting evaluation with branch tracking along
    paths and reporting its singularity set."""

    kind: str = "abstract"

    @property
    @abc.abstractmethod
    def singularities(self) -> tuple:
        """Branch points / singular points to avoid while continuing."""

    @abc.abstractmethod
    def germ(self, center: complex, n_terms: int, policy: StepPolicy = DEFAULT_POLICY) -> Germ:
        """Germ of the element's current branch at `center`."""

    @abc.abstractmethod
    def continued(self, path: Path, policy: StepPolicy = DEFAULT_POLICY) -> "AnalyticElement":
        """The element's branch at the end of `path` (pure; self unchanged)."""

    @abc.abstractmethod
    def value(self, z: complex, policy: StepPolicy = DEFAULT_POLICY) -> complex:
        """Evaluate the current branch at z."""

    def series(self, n_terms: int) -> CoeffSeries:
        """Principal Taylor coefficients at 0, when the element provides them."""
        raise NotImplementedError(f"{self.kind} has no home series")


def _check_clearance(path: Path, obstacles, policy: StepPolicy) -> None:
    clearance = policy.clearance_factor * path.length
    start = path.vertices[0]
    for s in obstacles:
        if abs(s - start) <= clearance:
            # walks may start at a regular singular point of the attached
            # operator (the stored expansion is the local solution there)
            continue
        d = path.min_distance(s)
        if d <= clearance:
            raise PathClearanceError(
                f"path passes within {d:.3g} of singularity {s} "
                f"(clearance {clearance:.3g})")


class GermElement(AnalyticElement):
    """A series germ with declared singularities and (usually) an attached ODE."""

    kind = "series-germ"

    def __init__(self, germ: Germ, singularities, ode: holonomic.ODEOperator | None = None,
                 recurrence: holonomic.Recurrence | None = None,
                 home_series: CoeffSeries | None = None):
        self._germ = germ
        self._sing = tuple(complex(s) for s in singularities)
        self.ode = ode
        self.recurrence = recurrence
        self._home = home_series

    # -- construction -----------------------------------------------------
    @classmethod
    def from_series(cls, series: CoeffSeries, singularities, center: complex = 0.0,
                    recurrence: holonomic.Recurrence | None = None,
                    fit: bool = True) -> "GermElement":
        """Anchor an element at `center` (inside the series disk) from its
        Taylor coefficients at 0. Fits a coefficient recurrence unless one is
        supplied or fitting is disabled."""
        center = complex(center)
        if recurrence is None and fit:
            recurrence = holonomic.fit_recurrence(series.coefficients)
        ode = holonomic.recurrence_to_ode(recurrence) if recurrence is not None else None
        sing = tuple(complex(s) for s in singularities)
        radius = min((abs(center - s) for s in sing), default=series.declared_radius)
        if center == 0.0:
            coeffs = series.coefficients
            g = Germ(0.0, coeffs, min(radius, series.declared_radius), 0.0)
        else:
            if abs(center) >= series.declared_radius:
                raise OutOfDiskError("anchor center outside the series disk")
            k = np.arange(len(series.coefficients), dtype=float)
            if ode is not None:
                r = ode.order
                init = [
                    complex(np.polynomial.polynomial.polyval(
                        center, series.coefficients[i:] * _falling(k, i)[i:]))
                    for i in range(r)
                ]
                obstacles = _obstacles(sing, ode)
                radius = min(abs(center - s) for s in obstacles)
                coeffs = holonomic.local_coefficients(ode, center, init, DEFAULT_POLICY.local_terms)
                g = Germ(center, coeffs, radius, 0.0)
            else:
                from .germs import taylor_shift
                coeffs = taylor_shift(series.coefficients, center)
                g = Germ(center, coeffs, radius, 0.0)
        return cls(g, sing, ode=ode,
                   recurrence=recurrence, home_series=series)

    # -- protocol ----------------------------------------------------------
    @property
    def singularities(self) -> tuple:
        return self._sing

    @property
    def current_germ(self) -> Germ:
        return self._germ

    def series(self, n_terms: int) -> CoeffSeries:
        if self._home is None:
            raise NotImplementedError("element was not built from a home series")
        return CoeffSeries(self._home.coefficients[:n_terms], self._home.declared_radius)

    def germ(self, center: complex, n_terms: int, policy: StepPolicy = DEFAULT_POLICY) -> Germ:
        center = complex(center)
        if center == self._germ.center:
            g = self._germ
            coeffs = g.coefficients[:n_terms]
            return Germ(g.center, coeffs, g.trust_radius, g.err_bound)
        moved = self.continued(Path.segment(self._germ.center, center), policy)
        return moved.germ(center, n_terms, policy)

    def value(self, z: complex, policy: StepPolicy = DEFAULT_POLICY) -> complex:
        z = complex(z)
        g = self._germ
        if abs(z - g.center) <= policy.eval_fraction * g.trust_radius:
            return germ_eval(g, z)
        return self.continued(Path.segment(g.center, z), policy).value(z, policy)

    def continued(self, path: Path, policy: StepPolicy = DEFAULT_POLICY) -> "GermElement":
        obstacles = _obstacles(self._sing, self.ode)
        _check_clearance(path, obstacles, policy)
        if self.ode is None:
            self._require_no_winding(path)
            return self._shift_walk(path, policy)
        return self._ode_walk(path, obstacles, policy)

    # -- internals ----------------------------------------------------------
    def _require_no_winding(self, path: Path) -> None:
        closed = path.vertices[0] == path.vertices[-1]
        if not closed:
            return
        for s in self._sing:
            if path.winding_number(s) != 0:
                raise AccuracyLossError(
                    "cannot wind a bare truncated germ around a singularity: "
                    "no coefficient recurrence is attached and plain Taylor-shift "
                    "chains carry no branch structure")

    def _shift_walk(self, path: Path, policy: StepPolicy) -> "GermElement":
        from .germs import recenter
        g = self._germ
        for target in path.vertices[1:]:
            while g.center != target:
                radius = _distance_to(g.center, self._sing, g.trust_radius)
                g = g.with_radius(radius)
                step = target - g.center
                limit = policy.theta * radius
                if abs(step) > limit:
                    step *= limit / abs(step)
                g = recenter(g, g.center + step, policy.theta + 1e-12)
                g = g.with_radius(_distance_to(g.center, self._sing, g.trust_radius))
        return GermElement(g, self._sing, ode=None, recurrence=None,
                           home_series=self._home)

    def _ode_walk(self, path: Path, obstacles, policy: StepPolicy) -> "GermElement":
        ode = self.ode
        r = ode.order
        g = self._germ
        c = g.center
        coeffs = g.coefficients
        if len(coeffs) < policy.local_terms:
            coeffs = np.concatenate(
                [coeffs, np.zeros(policy.local_terms - len(coeffs), dtype=complex)])
        drift_total = g.err_bound
        for target in path.vertices[1:]:
            while c != target:
                radius = _distance_to(c, obstacles, math.inf)
                step = target - c
                limit = policy.theta * radius
                if abs(step) > limit:
                    step *= limit / abs(step)
                init = holonomic.derivatives_at(coeffs, step, r)
                c_new = c + step
                new_coeffs = holonomic.local_coefficients(ode, c_new, init, policy.local_terms)
                # overlap re-evaluation at the step midpoint certifies the hop
                v_old = np.polynomial.polynomial.polyval(step / 2.0, coeffs)
                v_new = np.polynomial.polynomial.polyval(-step / 2.0, new_coeffs)
                drift_total += abs(v_old - v_new)
                scale = abs(new_coeffs[0]) + abs(v_new) + 1.0
                if drift_total > policy.drift_ceiling * scale:
                    raise AccuracyLossError(
                        f"accumulated continuation drift {drift_total:.3g} exceeds "
                        f"ceiling at center {c_new}")
                if not np.isfinite(new_coeffs).all():
                    raise AccuracyLossError(f"non-finite local expansion at {c_new}")
                c, coeffs = c_new, new_coeffs
        radius = _distance_to(c, obstacles, math.inf)
        out = Germ(c, coeffs, radius, drift_total)
        return GermElement(out, self._sing, ode=ode, recurrence=self.recurrence,
                           home_series=self._home)


def _distance_to(c: complex, points, default: float) -> float:
    """Distance from c to the nearest listed point, ignoring coincidences
    (walks may legitimately start at a regular singular point of the attached
    operator, where the stored expansion is the local solution)."""
    dists = [abs(c - s) for s in points]
    dists = [d for d in dists if d > 1e-12]
    if not dists:
        return default
    return min(dists)


def _falling(k: np.ndarray, i: int) -> np.ndarray:
    fac = np.ones_like(k)
    for j in range(i):
        fac = fac * np.maximum(k - j, 0)
    return fac


def _obstacles(singularities, ode) -> tuple:
    obs = list(singularities)
    if ode is not None:
        for root in ode.leading_roots():
            if all(abs(root - s) > 1e-9 for s in obs):
                obs.append(complex(root))
    return tuple(obs)


def continue_germ(el: AnalyticElement, path: Path,
                  policy: StepPolicy = DEFAULT_POLICY) -> AnalyticElement:
    """Continue an element along a polyline path; returns the element at the
    path end (series germs step by ODE-regenerated local expansions, closed
    forms by branch-phase tracking)."""
    return el.continued(path, policy)


def value_at(el: AnalyticElement, z: complex, policy: StepPolicy = DEFAULT_POLICY) -> complex:
    """Evaluate el's current branch at z, recentering as needed."""
    return el.value(z, policy)


# ---------------------------------------------------------------------------
# monodromy operators
# ---------------------------------------------------------------------------

def loop_radius(alpha: complex, singularities, home: complex = 0.0) -> float:
    """Monodromy loop radius at alpha: half the distance to the nearest other
    singularity, or half the distance to the home center when alpha is the
    only singularity."""
    alpha = complex(alpha)
    others = [abs(alpha - s) for s in singularities if abs(alpha - complex(s)) > 1e-12]
    if others:
        return 0.5 * min(others)
    return 0.5 * abs(alpha - home)


def default_base(alpha: complex, singularities, home: complex = 0.0) -> complex:
    """Base point on the segment from alpha toward the home center."""
    alpha = complex(alpha)
    r = loop_radius(alpha, singularities, home)
    direction = (home - alpha)
    if direction == 0:
        direction = 1.0
    return alpha + r * direction / abs(direction)


def sigma_k(F: AnalyticElement, alpha: complex, base: complex, k: int,
            policy: StepPolicy = DEFAULT_POLICY, n_terms: int | None = None) -> Germ:
    """Germ at `base` of Sigma_alpha^k F, computed by loop continuation.

    k = 0 returns the restriction of F at base; negative k uses clockwise
    loops.
    """
    n = n_terms or policy.local_terms
    if k == 0:
        return F.germ(base, n, policy)
    cur = F
    if isinstance(cur, GermElement) and cur.current_germ.center != complex(base):
        cur = cur.continued(Path.segment(cur.current_germ.center, base), policy)
    step = 1 if k > 0 else -1
    loop = Path.loop(alpha, base, step)
    for _ in range(abs(k)):
        cur = cur.continued(loop, policy)
    return cur.germ(base, n, policy)


@dataclass(frozen=True)
class BranchTable:
    """Germs of Sigma_alpha^k F at a base point for k in a window, plus the
    first differences (deltas[k] = branches[k+1] - branches[k])."""

    alpha: complex
    base: complex
    branches: Mapping[int, Germ]
    deltas: Mapping[int, Germ]

    def k_range(self):
        ks = sorted(self.branches)
        return ks[0], ks[-1]


def germ_sub(g1: Germ, g2: Germ) -> Germ:
    """Coefficientwise difference of two germs at the same center."""
    if g1.center != g2.center:
        raise ValueError("germ subtraction requires a common center")
    m = min(len(g1), len(g2))
    return Germ(g1.center, g1.coefficients[:m] - g2.coefficients[:m],
                min(g1.trust_radius, g2.trust_radius), g1.err_bound + g2.err_bound)


def build_branch_table(F: AnalyticElement, alpha: complex, base: complex,
                       k_min: int, k_max: int,
                       policy: StepPolicy = DEFAULT_POLICY,
                       n_terms: int | None = None) -> BranchTable:
    """Branch germs for k in [k_min, k_max], computed incrementally (one more
    loop per branch, never k loops from scratch)."""
    if not (k_min <= 0 <= k_max):
        raise ValueError("window must contain k = 0")
    n = n_terms or policy.local_terms
    cur = F
    if isinstance(cur, GermElement) and cur.current_germ.center != complex(base):
        cur = cur.continued(Path.segment(cur.current_germ.center, base), policy)
    branches = {0: cur.germ(base, n, policy)}
    up = cur
    loop_pos = Path.loop(alpha, base, 1)
    for k in range(1, k_max + 1):
        up = up.continued(loop_pos, policy)
        branches[k] = up.germ(base, n, policy)
    down = cur
    loop_neg = Path.loop(alpha, base, -1)
    for k in range(-1, k_min - 1, -1):
        down = down.continued(loop_neg, policy)
        branches[k] = down.germ(base, n, policy)
    deltas = {k: germ_sub(branches[k + 1], branches[k])
              for k in range(k_min, k_max)}
    return BranchTable(complex(alpha), complex(base), branches, deltas)


# ---------------------------------------------------------------------------
# integrability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegrabilityDiagnostic:
    radii: tuple
    magnitudes: tuple  # one tuple per ray
    verdict: bool
    reason: str


def integrability_check(F: AnalyticElement, alpha: complex,
                        policy: StepPolicy = DEFAULT_POLICY,
                        abs_tol: float = 1e-8,
                        levels: int = 12) -> IntegrabilityDiagnostic:
    """Stolz-sector test: sample (z - alpha) F(z) along three rays into alpha
    at geometrically shrinking radii; integrable iff the magnitudes decay
    monotonically (and end well below their start).

    Note the absolute threshold abs_tol is only binding for fast-decaying
    cases; a square-root singularity decays like sqrt(r), so the practical
    criterion is monotone decay to <= max(abs_tol, m_first/32).
    """
    alpha = complex(alpha)
    home = 0.0
    direction = home - alpha
    if direction == 0:
        direction = -1.0
    direction /= abs(direction)
    r0 = 0.25 * min([abs(alpha - s) for s in F.singularities
                     if abs(alpha - complex(s)) > 1e-12] + [abs(alpha), 1.0])
    radii = tuple(r0 * 0.5 ** j for j in range(levels))
    rays = []
    ok = True
    reason = "monotone decay on all rays"
    for ang in (-math.pi / 4, 0.0, math.pi / 4):
        rot = direction * cmath.exp(1j * ang)
        mags = []
        for r in radii:
            z = alpha + r * rot
            v = F.value(z, policy)
            mags.append(abs((z - alpha) * v))
        rays.append(tuple(mags))
        decreasing = all(mags[j + 1] <= mags[j] * 1.05 for j in range(len(mags) - 1))
        small_end = mags[-1] <= max(abs_tol, mags[0] / 32.0)
        if not decreasing:
            ok = False
            reason = "magnitudes not monotonically decreasing"
        elif not small_end:
            ok = False
            reason = "magnitudes decay too slowly"
    return IntegrabilityDiagnostic(radii=radii, magnitudes=tuple(rays),
                                   verdict=ok, reason=reason)


# ---------------------------------------------------------------------------
# recurrence detection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceRelation:
    """Sigma^{m+d} F = sum_k a_k Sigma^{m+k} F with a recorded residual."""

    order: int
    coefficients: np.ndarray
    residual: float
    field_tag: str  # one of {"rational-like", "real", "complex"}


def _rationality_tag(coeffs: np.ndarray, tol: float = 1e-8, max_den: int = 64) -> str:
    real = np.abs(coeffs.imag).max() <= tol
    rational = True
    for c in coeffs:
        for part in (c.real, c.imag):
            fr = Fraction(float(part)).limit_denominator(max_den)
            if abs(float(fr) - part) > tol:
                rational = False
    if rational and real:
        return "rational-like"
    if real:
        return "real"
    return "complex"


def recurrence_detect(table: BranchTable, d_max: int, test_points: Sequence[complex],
                      tol: float = 1e-6) -> RecurrenceRelation | None:
    """Smallest d <= d_max with Sigma^d = sum_{k<d} a_k Sigma^k on the table,
    fitted by least squares on branch values at the test points and accepted
    only when the same relation also holds at shift m = d.

    Minimality is numerical: the residual is recorded, never assumed zero.
    """
    k_lo, k_hi = table.k_range()
    if k_hi < 2 * d_max:
        raise ValueError(f"table window must cover k = 0..{2 * d_max}")
    pts = [complex(p) for p in test_points]
    V = np.array([[germ_eval(table.branches[k], p) for k in range(0, 2 * d_max + 1)]
                  for p in pts])
    scale = np.abs(V).max() + 1e-300
    for d in range(1, d_max + 1):
        A = V[:, 0:d]
        y = V[:, d]
        a, *_ = np.linalg.lstsq(A, y, rcond=None)
        res0 = np.abs(A @ a - y).max() / scale
        A_shift = V[:, d:2 * d]
        y_shift = V[:, 2 * d]
        res_d = np.abs(A_shift @ a - y_shift).max() / scale
        if res0 < tol and res_d < tol:
            return RecurrenceRelation(order=d, coefficients=a,
                                      residual=float(max(res0, res_d)),
                                      field_tag=_rationality_tag(a))
    return None
