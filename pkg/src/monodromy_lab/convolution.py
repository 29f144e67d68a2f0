"""Plancherel-Hadamard contour evaluation, the bar-star integral convolution,
and two-sided residual evaluators for the displayed monodromy identities.

Every residual evaluator computes its two sides by independent routes:
left-hand sides by honest numerical continuation (ODE-regenerated germs or
tracked closed forms), right-hand sides by quadrature of exact local
monodromy data. Nothing on one side reuses the identity being checked.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .continuation import (
    DEFAULT_POLICY,
    AnalyticElement,
    BranchTable,
    GermElement,
    StepPolicy,
    build_branch_table,
    germ_eval,
)
from .errors import (
    ContourSingularityError,
    DomainError,
    InvalidAnnulusError,
    PathClearanceError,
    UnsupportedDepthError,
)
from .germs import CoeffSeries, Germ, M_DEFAULT, M_UNIT_CIRCLE, hadamard_coeffs
from .holonomic import fit_recurrence, fit_recurrence_exact
from .numerics import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    path_integral_smooth,
    unit_integral_singular,
)
from .paths import Path
from .zoo import ConstantElement, DeltaElement, delta_branch, _track_log, _walk_log

__all__ = [
    "PairDecomposition",
    "pair_decomposition",
    "hadamard_eval_contour",
    "bar_star",
    "hadamard_product_element",
    "HadamardProduct",
    "clear_path",
    "iterated_formula_residual",
    "multi_factor_rhs",
    "morphism_residual",
    "fundamental_formula_residual",
    "barstar_monodromy_residual",
    "loop_integral_tracked",
    "ResidualRecord",
]


# ---------------------------------------------------------------------------
# pair decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairDecomposition:
    """Pairs (alpha, beta) with alpha*beta = gamma, alpha in sing(F), beta in sing(G)."""

    gamma: complex
    pairs: tuple

    @property
    def multiplicity(self) -> int:
        return len(self.pairs)


def pair_decomposition(F: AnalyticElement, G: AnalyticElement, gamma: complex,
                       rtol: float = 1e-9) -> PairDecomposition:
    gamma = complex(gamma)
    pairs = []
    for a in F.singularities:
        for b in G.singularities:
            if abs(a * b - gamma) <= rtol * max(1.0, abs(gamma)):
                pairs.append((complex(a), complex(b)))
    return PairDecomposition(gamma=gamma, pairs=tuple(pairs))


# ---------------------------------------------------------------------------
# Plancherel-Hadamard contour evaluation
# ---------------------------------------------------------------------------

def _series_radius(el: AnalyticElement) -> float:
    sings = el.singularities
    return min((abs(s) for s in sings), default=math.inf)


def _principal_fn(el: AnalyticElement) -> Callable[[complex], complex]:
    if isinstance(el, GermElement):
        try:
            series = el.series(1 << 20)
            coeffs = series.coefficients
            return lambda u: complex(np.polynomial.polynomial.polyval(u, coeffs))
        except NotImplementedError:
            pass
    return lambda u: el.value(u)


def hadamard_eval_contour(F: AnalyticElement, G: AnalyticElement, z: complex, r: float,
                          config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """(F . G)(z) = (1/2*pi*i) oint F(u) G(z/u) du/u on the circle |u| = r,
    which requires |z|/R_G < r < R_F."""
    z = complex(z)
    R_F = _series_radius(F)
    R_G = _series_radius(G)
    if not (abs(z) / R_G < r < R_F):
        raise InvalidAnnulusError(
            f"need |z|/R_G = {abs(z) / R_G:.4g} < r = {r:.4g} < R_F = {R_F:.4g}")
    fF = _principal_fn(F)
    fG = _principal_fn(G)
    n = config.circle_nodes
    total = 0.0 + 0.0j
    for j in range(n):
        u = r * cmath.exp(2j * math.pi * j / n)
        v = fF(u) * fG(z / u)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ContourSingularityError(u)
        total += v
    return total / n


# ---------------------------------------------------------------------------
# bar-star convolution
# ---------------------------------------------------------------------------

def _ts_unit(fn, config: QuadratureConfig) -> complex:
    return unit_integral_singular(fn, config, raise_on_divergence=False)


def _as_delta(el) -> DeltaElement:
    if isinstance(el, DeltaElement):
        return el
    raise DomainError(
        "bar_star operands must be closed-form delta elements (DeltaElement); "
        "germ-backed operands cannot be evaluated down to the singular endpoint")


def bar_star(f, g, alpha: complex, beta: complex, z: complex,
             config: QuadratureConfig = DEFAULT_CONFIG, *,
             log_w0: complex | None = None,
             forced_bumps: Sequence[float] = (),
             bump_radius: float = 0.05) -> complex:
    """f bar-star g = -(1/2*pi*i) int_alpha^{z/beta} f(u) g(z/u) du/u.

    f and g are delta elements (exact local monodromy data); the path is the
    straight segment u = alpha + t (z/beta - alpha), t in (0, 1), deflected by
    a circular bump around any other singularity that comes within
    bump_radius * segment length of it. Branches are anchored principally at
    the segment midpoint and extended continuously; log_w0 optionally replaces
    the principal branch of log(1 - z/(alpha*beta)) (used by monodromy
    sweeps).
    """
    alpha = complex(alpha)
    beta = complex(beta)
    z = complex(z)
    if isinstance(f, ConstantElement) or isinstance(g, ConstantElement):
        return 0.0 + 0.0j
    f = _as_delta(f)
    g = _as_delta(g)
    if f.is_zero() or g.is_zero():
        return 0.0 + 0.0j
    gamma = alpha * beta
    e = z / beta
    span = e - alpha
    if abs(span) <= 1e-15 * max(abs(alpha), abs(e), 1.0):
        return 0.0 + 0.0j
    if log_w0 is None:
        log_w0 = cmath.log(1.0 - z / gamma)
    fL = f.left_fn(e, log_w0)
    fR = g.right_fn(beta, z, alpha, e, log_w0)

    def integrand(t, log_t, log_1mt):
        u = alpha + t * span
        return fL(t, log_t) * fR(t, log_1mt, u) / u

    # obstacles in t-units: other singularities of f on the u-segment and
    # preimages u = z/s of other singularities of g
    bumps = list(forced_bumps)
    for s in f.singularities:
        if abs(s - alpha) < 1e-12:
            continue
        t_s = (complex(s) - alpha) / span
        if 0.02 < t_s.real < 0.98 and abs(t_s.imag) < bump_radius:
            bumps.append(t_s.real)
    for s in g.singularities:
        if abs(complex(s) - beta) < 1e-12:
            continue
        u_s = z / complex(s)
        t_s = (u_s - alpha) / span
        if 0.02 < t_s.real < 0.98 and abs(t_s.imag) < bump_radius:
            bumps.append(t_s.real)
    bumps = sorted(set(bumps))
    for b in bumps:
        if not (bump_radius * 1.5 < b < 1.0 - bump_radius * 1.5):
            raise PathClearanceError(
                f"singularity too close to a bar-star endpoint (t = {b:.3g})")

    if not bumps:
        val = _ts_unit(lambda x, d0, d1: integrand(
            d0 if d0 <= d1 else 1.0 - d1, math.log(d0), math.log(d1)), config)
    else:
        val = 0.0 + 0.0j
        cut_lo = 0.0
        segments = []
        for b in bumps:
            segments.append((cut_lo, b - bump_radius))
            segments.append(("arc", b))
            cut_lo = b + bump_radius
        segments.append((cut_lo, 1.0))
        for seg in segments:
            if seg[0] == "arc":
                b = seg[1]
                pts = [b + bump_radius * cmath.exp(1j * ang)
                       for ang in np.linspace(math.pi, 0.0, 9)]
                val += path_integral_smooth(
                    lambda t: integrand(t, cmath.log(t), cmath.log(1.0 - t)), pts)
            else:
                lo, hi = seg
                width = hi - lo
                if width <= 0:
                    continue
                if lo == 0.0:
                    val += width * _ts_unit(
                        lambda x, d0, d1: integrand(width * d0 if d0 <= d1 else width * (1.0 - d1),
                                                    math.log(width) + math.log(d0 if d0 <= d1 else (1.0 - d1)),
                                                    math.log1p(-width * (d0 if d0 <= d1 else (1.0 - d1)))),
                        config)
                elif hi == 1.0:
                    # t = 1 - width * x, singular end at x -> 0
                    val += width * _ts_unit(
                        lambda x, d0, d1: integrand(1.0 - width * (d0 if d0 <= d1 else (1.0 - d1)),
                                                    math.log1p(-width * (d0 if d0 <= d1 else (1.0 - d1))),
                                                    math.log(width) + math.log(d0 if d0 <= d1 else (1.0 - d1))),
                        config)
                else:
                    val += path_integral_smooth(
                        lambda t: integrand(t, cmath.log(t), cmath.log(1.0 - t)),
                        [lo, hi])
    return -(1.0 / (2j * math.pi)) * val * span


# ---------------------------------------------------------------------------
# the Hadamard product as a continuable element
# ---------------------------------------------------------------------------

def product_singularities(F: AnalyticElement, G: AnalyticElement) -> tuple:
    out = []
    for a in F.singularities:
        for b in G.singularities:
            p = complex(a) * complex(b)
            if all(abs(p - q) > 1e-9 for q in out):
                out.append(p)
    return tuple(out)


def hadamard_product_element(F: AnalyticElement, G: AnalyticElement,
                             n_terms: int | None = None,
                             anchor: complex | None = None) -> GermElement:
    """F . G as a germ element anchored inside its disk of convergence, with a
    coefficient recurrence fitted to (and verified against) the product
    coefficients so the product can be continued honestly.

    When both factors have exactly rational coefficient sequences the
    recurrence is recovered by exact rational elimination (the stepping
    operator must be exact: a perturbed operator's parasitic solutions grow
    exponentially along long walks); otherwise a numerically fitted and
    rationalized recurrence is used.
    """
    sings = product_singularities(F, G)
    radius = min(abs(s) for s in sings)
    if n_terms is None:
        n_terms = M_UNIT_CIRCLE if radius <= 1.5 else M_DEFAULT
    series = hadamard_coeffs(F.series(n_terms), G.series(n_terms))
    series = CoeffSeries(series.coefficients, radius)
    if anchor is None:
        anchor = 0.45 * radius
    rec = None
    f_exact = getattr(F, "series_exact", None)
    g_exact = getattr(G, "series_exact", None)
    if f_exact is not None and g_exact is not None:
        n_exact = 140
        fe = f_exact(n_exact)
        ge = g_exact(n_exact)
        if fe is not None and ge is not None:
            h_exact = [a * b for a, b in zip(fe, ge)]
            rec = fit_recurrence_exact(h_exact, series.coefficients)
    if rec is None:
        rec = fit_recurrence(series.coefficients)
    if rec is None:
        raise DomainError("no verifiable coefficient recurrence found for the "
                          "Hadamard product; cannot continue its germ honestly")
    return GermElement.from_series(series, sings, center=anchor, recurrence=rec)


class HadamardProduct:
    """The Hadamard product F . G prepared for continuation, with sum factors
    split bilinearly into one-pair terms.

    Each term (F_i . G_j) carries its own exact low-order operator; splitting
    keeps continuation well conditioned (a joint operator for the full sum has
    much higher order and wilder parasitic solutions). Branch tables are
    cached per (gamma, base)."""

    def __init__(self, F: AnalyticElement, G: AnalyticElement,
                 n_terms: int | None = None):
        from .zoo import SumElement
        f_parts = F.parts if isinstance(F, SumElement) else (F,)
        g_parts = G.parts if isinstance(G, SumElement) else (G,)
        self.terms = [hadamard_product_element(fi, gj, n_terms=n_terms)
                      for fi in f_parts for gj in g_parts]
        self._tables: dict = {}

    @property
    def singularities(self) -> tuple:
        out = []
        for t in self.terms:
            for s in t.singularities:
                if all(abs(s - q) > 1e-9 for q in out):
                    out.append(s)
        return tuple(out)

    def value(self, z: complex, policy: StepPolicy = DEFAULT_POLICY) -> complex:
        return sum(_move_to(t, complex(z), policy).value(z, policy) for t in self.terms)

    def _term_table(self, idx: int, gamma: complex, base: complex, k_max: int,
                    policy: StepPolicy) -> BranchTable:
        key = (idx, complex(gamma), complex(base))
        cached = self._tables.get(key)
        if cached is not None and max(cached.branches) >= k_max:
            return cached
        term = _move_to(self.terms[idx], base, policy)
        table = build_branch_table(term, gamma, base, 0, k_max, policy)
        self._tables[key] = table
        return table

    def branch_values(self, gamma: complex, base: complex, ks, z: complex,
                      policy: StepPolicy = DEFAULT_POLICY) -> dict:
        """{k: Sigma_gamma^k (F.G)(z)} summed over the bilinear terms, each
        continued around gamma with its own operator."""
        gamma = complex(gamma)
        base = complex(base)
        k_max = max(ks)
        out = {k: 0.0 + 0.0j for k in ks}
        err = 0.0
        for idx, term in enumerate(self.terms):
            table = self._term_table(idx, gamma, base, k_max, policy)
            for k in ks:
                el = GermElement(table.branches[k], term.singularities,
                                 ode=term.ode, recurrence=term.recurrence)
                out[k] += el.value(z, policy)
                err += table.branches[k].err_bound
        self.last_err_bound = err
        return out


def clear_path(a: complex, b: complex, obstacles, margin: float) -> Path:
    """Straight segment from a to b, detoured sideways around any obstacle
    closer than `margin` to it."""
    a = complex(a)
    b = complex(b)
    seg = Path.segment(a, b)
    blockers = [s for s in obstacles if seg.min_distance(s) < margin
                and abs(s - a) > margin and abs(s - b) > margin]
    if not blockers:
        return seg
    direction = (b - a) / abs(b - a)
    points = [a]
    for s in sorted(blockers, key=lambda s: ((s - a) / direction).real):
        points.append(complex(s) + 1.5 * margin * 1j * direction)
    points.append(b)
    return Path(tuple(points))


# ---------------------------------------------------------------------------
# residual evaluators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidualRecord:
    """One verified identity instance; serializable for reports."""

    identity: str
    parameters: dict
    z: complex
    lhs: complex
    rhs: complex
    residual: float
    err_estimates: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "parameters": self.parameters,
            "z": [self.z.real, self.z.imag],
            "lhs": {"re": self.lhs.real, "im": self.lhs.imag},
            "rhs": {"re": self.rhs.real, "im": self.rhs.imag},
            "residual": self.residual,
            "err_estimates": self.err_estimates,
        }


def iterated_formula_residual(F: AnalyticElement, G: AnalyticElement, gamma: complex,
                              N: int, z: complex,
                              config: QuadratureConfig = DEFAULT_CONFIG,
                              policy: StepPolicy = DEFAULT_POLICY,
                              product: HadamardProduct | None = None,
                              base: complex | None = None) -> ResidualRecord:
    """Iterated monodromy formula:

        (Sigma_gamma^N - Id)(F . G)(z)
            = sum_{alpha beta = gamma} sum_{k=0}^{N-1}
              Delta Sigma^k F  bar-star  Delta Sigma^k G   (at z)

    The left side continues the Hadamard-coefficient germs around gamma; the
    right side is quadrature of exact deltas. `product` and `base` allow reuse
    across calls.
    """
    gamma = complex(gamma)
    z = complex(z)
    if product is None:
        product = HadamardProduct(F, G)
    from .continuation import default_base
    if base is None:
        base = default_base(gamma, product.singularities)
    vals = product.branch_values(gamma, base, (0, N), z, policy)
    lhs = vals[N] - vals[0]
    pairs = pair_decomposition(F, G, gamma)
    rhs = 0.0 + 0.0j
    for (a, b) in pairs.pairs:
        for k in range(N):
            rhs += bar_star(delta_branch(F, a, k), delta_branch(G, b, k), a, b, z, config)
    err = {"lhs_drift": product.last_err_bound}
    return ResidualRecord(
        identity="iterated-monodromy", z=z, lhs=lhs, rhs=rhs,
        residual=abs(lhs - rhs),
        parameters={"gamma": [gamma.real, gamma.imag], "N": N,
                    "pairs": [[list((p[0].real, p[0].imag)), list((p[1].real, p[1].imag))]
                              for p in pairs.pairs]},
        err_estimates=err)


def _move_to(el: GermElement, target: complex, policy: StepPolicy) -> GermElement:
    cur = el.current_germ.center
    if cur == complex(target):
        return el
    from .continuation import _obstacles
    obstacles = _obstacles(el.singularities, el.ode)
    margin = 0.5 * min(abs(complex(target) - s) for s in el.singularities)
    return el.continued(clear_path(cur, target, obstacles, margin), policy)


def multi_factor_rhs(factors: Sequence[AnalyticElement], gamma: complex, N: int,
                     z: complex, config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Right-hand side of the several-factor iterated monodromy formula,
    evaluated as nested bar-star convolutions (right-associated); the inner
    convolution is re-evaluated as a function of its argument inside the
    outer integral. Supports 2 or 3 factors."""
    n = len(factors)
    if n < 2:
        raise DomainError("need at least two factors")
    if n > 3:
        raise UnsupportedDepthError("nested convolution depth > 3 is unsupported")
    gamma = complex(gamma)
    z = complex(z)
    tuples = _factor_tuples(factors, gamma)
    inner_config = QuadratureConfig(circle_nodes=config.circle_nodes,
                                    de_level=max(3, config.de_level - 3),
                                    abs_tol=max(config.abs_tol, 1e-9),
                                    rel_tol=max(config.rel_tol, 1e-9))
    total = 0.0 + 0.0j
    for alphas in tuples:
        for k in range(N):
            if n == 2:
                total += bar_star(delta_branch(factors[0], alphas[0], k),
                                  delta_branch(factors[1], alphas[1], k),
                                  alphas[0], alphas[1], z, config)
            else:
                total += _bar_star_nested3(factors, alphas, k, z, config, inner_config)
    return total


def _factor_tuples(factors, gamma, rtol=1e-9):
    out = []

    def rec(i, prefix, prod):
        if i == len(factors):
            if abs(prod - gamma) <= rtol * max(1.0, abs(gamma)):
                out.append(tuple(prefix))
            return
        for s in factors[i].singularities:
            rec(i + 1, prefix + [complex(s)], prod * complex(s))
    rec(0, [], 1.0 + 0.0j)
    return out


def _bar_star_nested3(factors, alphas, k, z, config, inner_config):
    a1, a2, a3 = alphas
    f1 = delta_branch(factors[0], a1, k)
    f2 = delta_branch(factors[1], a2, k)
    f3 = delta_branch(factors[2], a3, k)
    beta = a2 * a3  # singularity of the inner convolution
    e = z / beta
    span = e - a1
    if abs(span) < 1e-15:
        return 0.0 + 0.0j
    log_w0 = cmath.log(1.0 - z / (a1 * beta))
    fL = f1.left_fn(e, log_w0)

    def integrand(x, d0, d1):
        t = d0 if d0 <= d1 else 1.0 - d1
        u = a1 + t * span
        w = z / u
        inner = bar_star(f2, f3, a2, a3, w, inner_config)
        return fL(t, math.log(d0)) * inner / u

    val = _ts_unit(integrand, inner_config)
    return -(1.0 / (2j * math.pi)) * val * span


def morphism_residual(F: AnalyticElement, G: AnalyticElement, gamma: complex, k: int,
                      z: complex, config: QuadratureConfig = DEFAULT_CONFIG,
                      policy: StepPolicy = DEFAULT_POLICY,
                      product: HadamardProduct | None = None,
                      base: complex | None = None) -> ResidualRecord:
    """Morphism property: Delta Sigma^k (F . G) =
    sum_{alpha beta = gamma} Delta Sigma^k F bar-star Delta Sigma^k G."""
    gamma = complex(gamma)
    z = complex(z)
    if product is None:
        product = HadamardProduct(F, G)
    from .continuation import default_base
    if base is None:
        base = default_base(gamma, product.singularities)
    vals = product.branch_values(gamma, base, (k, k + 1), z, policy)
    lhs = vals[k + 1] - vals[k]
    pairs = pair_decomposition(F, G, gamma)
    rhs = sum(bar_star(delta_branch(F, a, k), delta_branch(G, b, k), a, b, z, config)
              for (a, b) in pairs.pairs)
    return ResidualRecord(
        identity="hadamard-morphism", z=z, lhs=lhs, rhs=complex(rhs),
        residual=abs(lhs - rhs),
        parameters={"gamma": [gamma.real, gamma.imag], "k": k},
        err_estimates={"lhs_drift": product.last_err_bound})


def loop_integral_tracked(f: AnalyticElement, loop: Path, nodes_per_chord: int = 16,
                          policy: StepPolicy = DEFAULT_POLICY) -> complex:
    """oint f(u) du along the loop with f's branch carried continuously
    chord by chord."""
    x, w = np.polynomial.legendre.leggauss(nodes_per_chord)
    total = 0.0 + 0.0j
    cur = f
    if hasattr(cur, "anchor") and cur.anchor != loop.vertices[0]:
        cur = cur.continued(Path.segment(cur.anchor, loop.vertices[0]), policy)
    for p, q in zip(loop.vertices[:-1], loop.vertices[1:]):
        mid = (p + q) / 2.0
        half = (q - p) / 2.0
        for xi, wi in zip(x, w):
            total += wi * cur.value(mid + half * xi, policy) * half
        cur = cur.continued(Path.segment(p, q), policy)
    return total


def fundamental_formula_residual(f: AnalyticElement, alpha: complex, z: complex,
                                 config: QuadratureConfig = DEFAULT_CONFIG,
                                 policy: StepPolicy = DEFAULT_POLICY,
                                 delta_f: Callable[[complex], complex] | None = None
                                 ) -> ResidualRecord:
    """Integro-monodromy formula for the primitive P(w) = int_alpha^w f:

        Delta_alpha P (z) = int_alpha^z (Delta_alpha f)(u) du

    The left side is the tracked loop integral of f around the circle through
    z (the monodromy of the primitive measured directly); the right side
    integrates the exact delta of f along [alpha, z].
    """
    alpha = complex(alpha)
    z = complex(z)
    loop = Path.loop(alpha, z, 1)
    lhs = loop_integral_tracked(f, loop, policy=policy)
    if delta_f is None:
        # exact delta on the segment, with its singular factor carried through
        # the quadrature grid's endpoint distances
        d = delta_branch(f, alpha, 0)
        log_w0 = cmath.log(1.0 - z / alpha) if alpha != 0 else 0.0
        fL = d.left_fn(z, log_w0)
        span = z - alpha
        rhs = span * unit_integral_singular(
            lambda x, d0, d1: fL(d0 if d0 <= d1 else 1.0 - d1, math.log(d0)), config)
    else:
        from .numerics import segment_integral_singular
        rhs = segment_integral_singular(delta_f, alpha, z, config)
    return ResidualRecord(
        identity="integro-monodromy", z=z, lhs=lhs, rhs=rhs,
        residual=abs(lhs - rhs),
        parameters={"alpha": [alpha.real, alpha.imag]})


def barstar_monodromy_residual(F: AnalyticElement, G: AnalyticElement, alpha: complex,
                               beta: complex, z: complex,
                               config: QuadratureConfig = DEFAULT_CONFIG) -> ResidualRecord:
    """Monodromy of a bar-star convolution around gamma = alpha*beta:

        Delta_gamma (Delta F bar-star Delta G)
            = Delta Sigma F bar-star Delta Sigma G - Delta F bar-star Delta G

    The left side re-evaluates the convolution with its branch data tracked
    along a z-loop around gamma (measured continuation, not bookkeeping); the
    right side assembles the k = 0, 1 convolutions directly.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    z = complex(z)
    gamma = alpha * beta
    dF = delta_branch(F, alpha, 0)
    dG = delta_branch(G, beta, 0)
    w0fun = lambda zz: 1.0 - zz / gamma
    log0 = cmath.log(w0fun(z))
    loop = Path.loop(gamma, z, 1)
    log_after = _walk_log(w0fun, loop.vertices, log0)
    before = bar_star(dF, dG, alpha, beta, z, config, log_w0=log0)
    after = bar_star(dF, dG, alpha, beta, z, config, log_w0=log_after)
    lhs = after - before
    rhs = bar_star(delta_branch(F, alpha, 1), delta_branch(G, beta, 1),
                   alpha, beta, z, config) - before
    return ResidualRecord(
        identity="barstar-monodromy", z=z, lhs=lhs, rhs=rhs,
        residual=abs(lhs - rhs),
        parameters={"alpha": [alpha.real, alpha.imag], "beta": [beta.real, beta.imag]})
