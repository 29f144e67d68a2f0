"""Linear recurrences for coefficient sequences and their differential form.

Analytic continuation of a bare truncated germ is ill-posed: Taylor-shift
chains are polynomial algebra and carry no branch structure at all. The
honest route used here fits a short linear recurrence with polynomial
coefficients to the germ's coefficient sequence, verifies it against the
entire sequence (that residual is the certificate), converts it to a linear
ODE, and lets continuation regenerate local expansions from the ODE at every
step. The fit is plain linear algebra on the coefficients, independent of any
monodromy identity being verified downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

__all__ = ["Recurrence", "ODEOperator", "fit_recurrence", "fit_recurrence_exact",
           "recurrence_to_ode", "local_coefficients"]


@dataclass(frozen=True)
class Recurrence:
    """sum_j P_j(n) h_{n+j} = 0 for all n >= 0; P[j, s] = coeff of n**s in P_j."""

    P: np.ndarray
    residual: float  # worst relative row residual over the verified range

    @property
    def order(self) -> int:
        return self.P.shape[0] - 1

    @property
    def degree(self) -> int:
        return self.P.shape[1] - 1

    def row_value(self, h, n: int) -> complex:
        npow = np.power(float(n), np.arange(self.P.shape[1]))
        return complex(sum((self.P[j] @ npow) * h[n + j] for j in range(self.P.shape[0])))


@dataclass(frozen=True)
class ODEOperator:
    """sum_i q_i(z) w^(i)(z) = 0; q[i] are ascending polynomial coefficients."""

    q: tuple

    @property
    def order(self) -> int:
        return len(self.q) - 1

    def leading_roots(self) -> np.ndarray:
        lead = np.asarray(self.q[-1])
        lead = np.trim_zeros(lead, "b")
        if len(lead) <= 1:
            return np.zeros(0, dtype=complex)
        return np.roots(lead[::-1])


def _verify(P: np.ndarray, h: np.ndarray) -> float:
    """Worst row-relative residual of the recurrence over the whole sequence
    (including the boundary rows n = -order..-1 with h_{<0} = 0, which the
    differential form of the recurrence requires):
    |sum_j P_j(n) h_{n+j}| / max_j |P_j(n) h_{n+j}|."""
    order = P.shape[0] - 1
    deg = P.shape[1] - 1
    n_idx = np.arange(-order, len(h) - order)
    npows = np.vander(n_idx.astype(float), deg + 1, increasing=True)
    hpad = np.concatenate([np.zeros(order, dtype=complex), np.asarray(h)])
    terms = np.zeros((len(n_idx), order + 1), dtype=complex)
    for j in range(order + 1):
        terms[:, j] = (npows @ P[j]) * hpad[j: j + len(n_idx)]
    scale = np.abs(terms).max(axis=1)
    global_scale = scale.max()
    ok = scale > 1e-250
    if not ok.any():
        return math.inf
    resid = np.abs(terms.sum(axis=1))[ok] / scale[ok]
    worst = float(resid.max())
    # boundary rows compared against the typical row scale
    nb = min(order, len(n_idx))
    if nb and global_scale > 0:
        head_scale = np.median(scale[ok][: min(32, ok.sum())])
        bresid = np.abs(terms[:nb].sum(axis=1)) / head_scale
        worst = max(worst, float(bresid.max()))
    return worst


def _rationalize(P: np.ndarray, max_den: int = 4096):
    anchor = P.flat[int(np.argmax(np.abs(P)))]
    Pn = P / anchor
    if np.abs(Pn.imag).max() > 1e-7:
        return None
    out = np.zeros_like(Pn)
    for idx, x in np.ndenumerate(Pn):
        if abs(x) < 1e-7:
            continue  # snap numerical noise in structurally empty slots
        fr = Fraction(float(x.real)).limit_denominator(max_den)
        if abs(float(fr) - x.real) > 1e-6 * max(1.0, abs(x.real)):
            return None
        out[idx] = complex(fr)
    return out


_LADDER = ((1, 1), (1, 2), (2, 2), (1, 4), (2, 4), (1, 6), (2, 6), (3, 6),
           (3, 8), (4, 8), (4, 10), (4, 14))


def fit_recurrence(h: Sequence[complex], ladder=_LADDER, accept: float = 1e-8,
                   max_rows: int = 400) -> Recurrence | None:
    """Find the smallest recurrence in the ladder satisfied by h.

    The fit is an SVD nullspace on a training window; acceptance is by the
    worst relative residual over the *whole* sequence. When the fitted
    coefficients are close to small rationals, the rationalized recurrence is
    re-verified and kept if it does at least as well.
    """
    h = np.asarray(h, dtype=complex)
    for order, degree in ladder:
        if len(h) < 4 * (order + 1) * (degree + 1):
            continue
        rows = []
        hpad = np.concatenate([np.zeros(order, dtype=complex), h])
        for n in range(-order, min(len(h) - order, max_rows)):
            seg = hpad[n + order: n + 2 * order + 1]
            sc = np.abs(seg).max()
            if sc == 0 or sc < 1e-250:
                continue
            npow = np.power(float(n), np.arange(degree + 1))
            row = np.concatenate([(hpad[n + order + j] / sc) * npow
                                  for j in range(order + 1)])
            rows.append(row)
        if len(rows) < 2 * (order + 1) * (degree + 1):
            continue
        A = np.array(rows)
        # column scaling tames the n**s dynamic range before the SVD
        col = np.abs(A).max(axis=0)
        col[col == 0] = 1.0
        _, _, Vh = np.linalg.svd(A / col)
        x = (Vh[-1].conj() / col)
        P = x.reshape(order + 1, degree + 1)
        resid = _verify(P, h)
        Pr = _rationalize(P)
        if Pr is not None:
            resid_r = _verify(Pr, h)
            if resid_r <= max(resid, 1e-12):
                P, resid = Pr, resid_r
        if resid < accept:
            return Recurrence(P=P, residual=resid)
    return None


def fit_recurrence_exact(h: Sequence[Fraction], h_float: np.ndarray,
                         ladder=_LADDER, accept: float = 1e-10) -> Recurrence | None:
    """Exact-nullspace variant of fit_recurrence for sequences with rational
    coefficients (e.g. products of binomial series with rational parameters).

    The nullspace is computed by Fraction Gaussian elimination, so the
    recovered recurrence is exact; it is still verified against the full
    floating-point sequence and that residual is recorded.
    """
    for order, degree in ladder:
        ncols = (order + 1) * (degree + 1)
        nrows = ncols + 8
        if len(h) < nrows + order + 1:
            continue
        # screen: a numeric fit at this rung must verify over the whole float
        # sequence before paying for the exact elimination
        candidate = fit_recurrence(h_float, ladder=((order, degree),), accept=1e-7)
        if candidate is None:
            continue
        if candidate.residual < 1e-12:
            return candidate
        rows = []
        for n in range(-order, nrows + 1):
            row = []
            for j in range(order + 1):
                for s in range(degree + 1):
                    hval = h[n + j] if n + j >= 0 else Fraction(0)
                    row.append(hval * Fraction(n) ** s)
            rows.append(row)
        null = _fraction_nullspace(rows, ncols)
        if null is None:
            continue
        lcm = 1
        for x in null:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        ints = [x * lcm for x in null]
        g = 0
        for x in ints:
            g = math.gcd(g, abs(x.numerator))
        if g:
            ints = [x / g for x in ints]
        P = np.array([complex(x) for x in ints]).reshape(order + 1, degree + 1)
        resid = _verify(P, h_float)
        if resid < accept:
            return Recurrence(P=P, residual=resid)
    return None


def _fraction_nullspace(rows, ncols):
    """One nullspace vector of the rational matrix (rows x ncols), or None."""
    m = [list(r) for r in rows]
    nr = len(m)
    piv_col_of_row = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nr):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_col_of_row.append(c)
        r += 1
        if r == nr:
            break
    pivots = set(piv_col_of_row)
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fc = free[-1]
    x = [Fraction(0)] * ncols
    x[fc] = Fraction(1)
    for row_idx, pc in enumerate(piv_col_of_row):
        x[pc] = -m[row_idx][fc]
    return x


def recurrence_to_ode(rec: Recurrence) -> ODEOperator:
    """Differential form of a coefficient recurrence.

    With theta = z d/dz, the operator sum_j z^(r-j) P_j(theta - j) annihilates
    sum h_n z^n whenever the recurrence holds for all n >= 0.
    """
    P = rec.P
    r = rec.order
    maxdeg = rec.degree
    # Stirling numbers of the second kind: theta^k = sum_i S[k, i] z^i d^i
    S = np.zeros((maxdeg + 1, maxdeg + 1))
    S[0, 0] = 1.0
    for k in range(1, maxdeg + 1):
        for i in range(1, k + 1):
            S[k, i] = S[k - 1, i - 1] + i * S[k - 1, i]
    q: dict[int, dict[int, complex]] = {}
    for j in range(r + 1):
        # P_j(theta - j) expanded as a polynomial in theta
        ptheta = np.zeros(maxdeg + 1, dtype=complex)
        for s in range(maxdeg + 1):
            c = P[j, s]
            if c == 0:
                continue
            for k in range(s + 1):
                ptheta[k] += c * comb(s, k) * ((-j) ** (s - k))
        for k in range(maxdeg + 1):
            if ptheta[k] == 0:
                continue
            for i in range(k + 1):
                if S[k, i] == 0:
                    continue
                q.setdefault(i, {})
                zdeg = r - j + i
                q[i][zdeg] = q[i].get(zdeg, 0.0) + ptheta[k] * S[k, i]
    order = max(q)
    polys = []
    for i in range(order + 1):
        d = q.get(i, {})
        dmax = max(d) if d else 0
        poly = np.zeros(dmax + 1, dtype=complex)
        for deg, c in d.items():
            poly[deg] = c
        polys.append(poly)
    # cancel the common z-power the theta-form construction plants at 0, so
    # the operator is not spuriously singular there
    scale = max(np.abs(p).max() for p in polys)
    low = []
    for p in polys:
        nz = np.nonzero(np.abs(p) > 1e-14 * scale)[0]
        if len(nz):
            low.append(nz[0])
    m = min(low) if low else 0
    if m > 0:
        polys = [p[m:] if len(p) > m else np.zeros(1, dtype=complex) for p in polys]
    return ODEOperator(q=tuple(polys))


def local_coefficients(ode: ODEOperator, center: complex, init: Sequence[complex],
                       n_terms: int) -> np.ndarray:
    """Taylor coefficients at `center` of the ODE solution with derivatives
    init = (w(c), w'(c), ..., w^(r-1)(c)). `center` must be an ordinary point
    of the operator."""
    r = ode.order
    if len(init) != r:
        raise ValueError(f"need {r} initial derivatives, got {len(init)}")
    # q_i(center + t) as polynomials in t
    qt = []
    for qi in ode.q:
        d = len(qi) - 1
        b = np.zeros(d + 1, dtype=complex)
        for s, cs in enumerate(qi):
            if cs == 0:
                continue
            for u in range(s + 1):
                b[u] += cs * comb(s, u) * center ** (s - u)
        qt.append(b)
    if qt[r][0] == 0 or abs(qt[r][0]) < 1e-300:
        raise ZeroDivisionError(f"{center} is a singular point of the operator")
    a = np.zeros(n_terms, dtype=complex)
    for i in range(r):
        a[i] = init[i] / math.factorial(i)
    for m in range(n_terms - r):
        tot = 0.0 + 0.0j
        for i in range(r + 1):
            qi = qt[i]
            for s in range(len(qi)):
                if qi[s] == 0:
                    continue
                k = m - s
                if k < 0:
                    continue
                idx = k + i
                if idx >= n_terms or (i == r and s == 0):
                    continue
                if a[idx] == 0:
                    continue
                fac = 1.0
                for t in range(k + 1, k + i + 1):
                    fac *= t
                tot += qi[s] * a[idx] * fac
        fac = 1.0
        for t in range(m + 1, m + r + 1):
            fac *= t
        a[m + r] = -tot / (qt[r][0] * fac)
    return a


def derivatives_at(coeffs: np.ndarray, offset: complex, n_der: int) -> list[complex]:
    """w(c+offset), w'(c+offset), ... from Taylor coefficients at c."""
    out = []
    L = len(coeffs)
    for i in range(n_der):
        if i >= L:
            out.append(0.0 + 0.0j)
            continue
        k = np.arange(L - i, dtype=float)
        fac = np.ones(L - i)
        for j in range(i):
            fac *= k + i - j
        out.append(complex(np.polynomial.polynomial.polyval(offset, coeffs[i:] * fac)))
    return out
