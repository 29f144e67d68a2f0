"""Continuation, monodromy operators, branch tables, integrability, and
recurrence detection."""

import cmath
import math

import numpy as np
import pytest

from monodromy_lab.continuation import (
    DEFAULT_POLICY,
    GermElement,
    StepPolicy,
    build_branch_table,
    continue_germ,
    germ_sub,
    integrability_check,
    loop_radius,
    recurrence_detect,
    sigma_k,
)
from monodromy_lab.errors import AccuracyLossError, PathClearanceError
from monodromy_lab.germs import CoeffSeries, germ_eval
from monodromy_lab.holonomic import fit_recurrence
from monodromy_lab.paths import Path
from monodromy_lab.zoo import (
    AlgebroGeometricElement,
    PolylogElement,
    PowerBranch,
    polylog_delta_exact,
    polylog_recurrence,
    polylog_series,
)


def sqrt_series(n):
    # (1-z)^(1/2)
    c = np.empty(n, dtype=complex)
    c[0] = 1.0
    for k in range(1, n):
        c[k] = c[k - 1] * (k - 1.5) / k
    return CoeffSeries(c, 1.0)


def geom_series(n):
    return CoeffSeries(np.ones(n), 1.0)


def rel_dev(a, b):
    scale = max(np.abs(a).max(), np.abs(b).max(), 1e-300)
    return np.abs(np.asarray(a) - np.asarray(b)).max() / scale


class TestContinueGerm:
    def test_inside_disk_matches_direct_evaluation(self):
        el = GermElement.from_series(sqrt_series(256), (1.0,))
        moved = continue_germ(el, Path.segment(0.0, 0.3 + 0.1j))
        want = cmath.sqrt(1.0 - (0.3 + 0.1j))
        assert abs(moved.value(0.3 + 0.1j) - want) < 1e-12

    def test_sqrt_negated_around_loop(self):
        el = GermElement.from_series(sqrt_series(256), (1.0,))
        looped = continue_germ(el, Path.loop(1.0, 0.0, 1))
        for z in (0.2, 0.1 - 0.2j):
            assert abs(looped.value(z) + cmath.sqrt(1.0 - z)) < 1e-10

    def test_pole_unchanged_around_loop(self):
        el = GermElement.from_series(geom_series(256), (1.0,))
        looped = continue_germ(el, Path.loop(1.0, 0.0, 1))
        g0 = el.germ(0.0, 24)
        g1 = looped.germ(0.0, 24)
        assert rel_dev(g0.coefficients, g1.coefficients) < 1e-10

    def test_null_homotopic_loop_returns_start(self):
        el = GermElement.from_series(sqrt_series(256), (1.0,))
        square = Path((0.0, 0.3, 0.3 + 0.3j, 0.3j, 0.0))
        back = continue_germ(el, square)
        g0 = el.germ(0.0, 24)
        g1 = back.germ(0.0, 24)
        dev = np.abs(g0.coefficients - g1.coefficients).max()
        assert dev <= 1e-10 + g1.err_bound

    def test_bare_germ_cannot_wind(self):
        el = GermElement.from_series(sqrt_series(64), (1.0,), fit=False)
        with pytest.raises(AccuracyLossError):
            continue_germ(el, Path.loop(1.0, 0.0, 1))

    def test_path_clearance_enforced(self):
        el = GermElement.from_series(sqrt_series(64), (1.0,))
        with pytest.raises(PathClearanceError):
            continue_germ(el, Path.segment(0.0, 1.0 + 1e-9j))

    def test_drift_certification_trips_on_bad_operator(self):
        # perturb the recurrence: the overlap re-evaluation must notice
        series = sqrt_series(256)
        rec = fit_recurrence(series.coefficients)
        P_bad = rec.P.copy()
        P_bad[0, 0] += 1e-3
        from monodromy_lab.holonomic import Recurrence
        el = GermElement.from_series(series, (1.0,),
                                     recurrence=Recurrence(P=P_bad, residual=1.0))
        with pytest.raises(AccuracyLossError):
            continue_germ(el, Path.loop(1.0, 0.0, 1))


class TestSigmaK:
    def test_k_zero_is_restriction(self):
        F = PowerBranch(1.0, 0.5)
        g = sigma_k(F, 1.0, 0.5, 0)
        assert abs(germ_eval(g, 0.55) - F.value(0.55)) < 1e-13

    def test_sqrt_flips_sign(self):
        F = PowerBranch(1.0, -0.5)  # sqrt(1-z)
        g0 = sigma_k(F, 1.0, 0.5, 0)
        g1 = sigma_k(F, 1.0, 0.5, 1)
        for z in (0.45, 0.5 + 0.1j):
            assert abs(germ_eval(g1, z) + germ_eval(g0, z)) < 1e-12

    def test_polylog_delta_formula(self):
        # Li_2 around 1: Sigma - Id gives -2 pi i log z
        el = GermElement.from_series(polylog_series(2, 256), (1.0, 0.0),
                                     center=0.45, recurrence=polylog_recurrence(2))
        g1 = sigma_k(el, 1.0, 0.5, 1)
        g0 = sigma_k(el, 1.0, 0.5, 0)
        z = 0.5 + 0.12j
        got = germ_eval(g1, z) - germ_eval(g0, z)
        assert abs(got - (-2j * math.pi * cmath.log(z))) < 1e-10

    def test_loop_composition(self):
        F = PowerBranch(1.0, 1.0 / 3.0)
        g2 = sigma_k(F, 1.0, 0.5, 2)
        el1 = F.continued(Path.loop(1.0, 0.5, 1))
        el2 = el1.continued(Path.loop(1.0, 0.5, 1))
        g2b = el2.germ(0.5, len(g2))
        assert np.abs(g2.coefficients - g2b.coefficients).max() \
            <= 1e-10 * np.abs(g2.coefficients).max()

    def test_orientation_inverse(self):
        F = PowerBranch(1.0, 1.0 / 3.0)
        el = F.continued(Path.loop(1.0, 0.5, -1)).continued(Path.loop(1.0, 0.5, 1))
        g = el.germ(0.5, 24)
        g0 = F.germ(0.5, 24)
        rel = np.abs(g.coefficients - g0.coefficients) / np.abs(g0.coefficients)
        assert rel.max() < 1e-12

    def test_negative_k_clockwise(self):
        F = PowerBranch(1.0, 1.0 / 3.0)
        g = sigma_k(F, 1.0, 0.5, -1)
        lam = cmath.exp(2j * math.pi / 3.0)  # inverse multiplier
        g0 = sigma_k(F, 1.0, 0.5, 0)
        assert abs(germ_eval(g, 0.55) - lam * germ_eval(g0, 0.55)) < 1e-12


class TestBranchTable:
    def test_holomorphic_nearby_gives_zero_deltas(self):
        F = PowerBranch(5.0, 0.5)  # singular only at 5
        t = build_branch_table(F, 1.0, 0.5, 0, 2)
        for k, d in t.deltas.items():
            assert np.abs(d.coefficients).max() < 1e-12

    def test_sqrt_alternation(self):
        F = PowerBranch(1.0, 0.5)
        t = build_branch_table(F, 1.0, 0.5, 0, 2)
        b0, b1, b2 = t.branches[0], t.branches[1], t.branches[2]
        assert rel_dev(b0.coefficients, -b1.coefficients) < 1e-12
        assert rel_dev(b0.coefficients, b2.coefficients) < 1e-12

    def test_li3_delta_matches_formula(self):
        el = GermElement.from_series(polylog_series(3, 256), (1.0, 0.0),
                                     center=0.45, recurrence=polylog_recurrence(3))
        t = build_branch_table(el, 1.0, 0.5, 0, 1)
        z = 0.58 + 0.1j
        got = germ_eval(t.deltas[0], z)
        want = -2j * math.pi * cmath.log(z) ** 2 / 2.0
        assert abs(got - want) < 1e-10

    def test_delta_algebra(self):
        F = PowerBranch(1.0, 1.0 / 3.0)
        t = build_branch_table(F, 1.0, 0.5, -1, 2)
        for k in range(-1, 2):
            # deltas are branch differences by construction (bitwise)
            m = len(t.deltas[k])
            want = t.branches[k + 1].coefficients[:m] - t.branches[k].coefficients[:m]
            assert np.array_equal(t.deltas[k].coefficients, want)
        g1 = sigma_k(F, 1.0, 0.5, 1)
        d0_indep = germ_sub(g1, F.germ(0.5, len(g1)))
        assert rel_dev(d0_indep.coefficients, t.deltas[0].coefficients) < 1e-12

    def test_window_must_contain_zero(self):
        with pytest.raises(ValueError):
            build_branch_table(PowerBranch(1.0, 0.5), 1.0, 0.5, 1, 3)


class TestIntegrability:
    def test_sqrt_singularity_integrable(self):
        assert integrability_check(PowerBranch(1.0, 0.5), 1.0).verdict

    def test_pole_not_integrable(self):
        diag = integrability_check(PowerBranch(1.0, 1.0), 1.0)
        assert not diag.verdict

    def test_log_integrable(self):
        el = AlgebroGeometricElement(1.0, 0.0, 1)
        assert integrability_check(el, 1.0).verdict

    def test_diagnostic_carries_magnitudes(self):
        diag = integrability_check(PowerBranch(1.0, 0.5), 1.0)
        assert len(diag.magnitudes) == 3
        assert len(diag.magnitudes[0]) == len(diag.radii)


class TestRecurrenceDetect:
    PTS = [0.5 + 0.15 * cmath.exp(2j * math.pi * j / 7.0) for j in range(7)]

    def test_sqrt_satisfies_period_two(self):
        t = build_branch_table(PowerBranch(1.0, -0.5), 1.0, 0.5, 0, 6)
        rr = recurrence_detect(t, 3, self.PTS)
        assert rr is not None
        # minimal relation is Sigma = -Id; its square is the identity
        if rr.order == 1:
            assert abs(rr.coefficients[0] + 1.0) < 1e-10
        else:
            assert rr.order == 2
            assert np.abs(rr.coefficients - np.array([1.0, 0.0])).max() < 1e-8

    def test_log_arithmetic_progression(self):
        el = AlgebroGeometricElement(1.0, 0.0, 1)
        t = build_branch_table(el, 1.0, 0.5, 0, 6)
        rr = recurrence_detect(t, 3, self.PTS)
        assert rr.order == 2
        assert np.abs(rr.coefficients - np.array([-1.0, 2.0])).max() < 1e-8
        assert rr.field_tag == "rational-like"

    def test_cube_root_order_one(self):
        # constant measured from one numerical loop, then verified at shift 1
        t = build_branch_table(PowerBranch(1.0, 1.0 / 3.0), 1.0, 0.5, 0, 6)
        rr = recurrence_detect(t, 3, self.PTS)
        assert rr.order == 1
        measured = germ_eval(t.branches[1], 0.55) / germ_eval(t.branches[0], 0.55)
        assert abs(rr.coefficients[0] - measured) < 1e-10
        assert abs(abs(rr.coefficients[0]) - 1.0) < 1e-10
        assert rr.field_tag == "complex"

    def test_residual_at_shifted_m(self):
        t = build_branch_table(PowerBranch(1.0, 1.0 / 3.0), 1.0, 0.5, 0, 6)
        rr = recurrence_detect(t, 3, self.PTS)
        V = np.array([[germ_eval(t.branches[k], p) for k in range(7)]
                      for p in self.PTS])
        scale = np.abs(V).max()
        d = rr.order
        shifted = np.abs(V[:, 2 * d] - V[:, d:2 * d] @ rr.coefficients).max() / scale
        assert shifted <= 10.0 * max(rr.residual, 1e-15)

    def test_window_requirement(self):
        t = build_branch_table(PowerBranch(1.0, -0.5), 1.0, 0.5, 0, 3)
        with pytest.raises(ValueError):
            recurrence_detect(t, 3, self.PTS)


def test_loop_radius_defaults():
    assert loop_radius(1.0, (1.0,)) == pytest.approx(0.5)       # toward home
    assert loop_radius(6.0, (4.0, 6.0, 9.0)) == pytest.approx(1.0)
