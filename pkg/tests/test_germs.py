"""Series and germ operations."""

import math

import numpy as np
import pytest

from monodromy_lab.errors import OutOfDiskError, StepViolationError
from monodromy_lab.germs import (
    CoeffSeries,
    Germ,
    germ_eval,
    germ_eval_tail_estimate,
    hadamard_coeffs,
    load_coeffs,
    radius_estimate,
    recenter,
    save_coeffs,
    taylor_shift,
)


def geometric(n, ratio=1.0):
    radius = 1.0 / abs(ratio) if ratio != 0 else math.inf
    return CoeffSeries(ratio ** np.arange(n), radius)


def exp_series(n):
    c = np.array([1.0 / math.factorial(k) for k in range(n)], dtype=complex)
    return CoeffSeries(c, math.inf)


def sqrt_inv_series(n):
    # (1-z)^(-1/2)
    c = np.empty(n, dtype=complex)
    c[0] = 1.0
    for k in range(1, n):
        c[k] = c[k - 1] * (k - 0.5) / k
    return CoeffSeries(c, 1.0)


class TestHadamardCoeffs:
    def test_elliptic_pair_low_coeffs(self):
        s = sqrt_inv_series(8)
        prod = hadamard_coeffs(s, s)
        assert abs(prod.coefficients[0] - 1.0) < 1e-15
        assert abs(prod.coefficients[1] - 0.25) < 1e-15
        assert abs(prod.coefficients[2] - 9.0 / 64.0) < 1e-15

    def test_geometric_is_identity(self):
        rng = np.random.default_rng(0)
        F = CoeffSeries(rng.normal(size=32) + 1j * rng.normal(size=32), 2.0)
        ones = CoeffSeries(np.ones(32), 1.0)
        out = hadamard_coeffs(F, ones)
        assert np.allclose(out.coefficients, F.coefficients)

    def test_geometric_times_geometric(self):
        a, b = 0.7, -1.3
        out = hadamard_coeffs(geometric(24, a), geometric(24, b))
        assert np.allclose(out.coefficients, (a * b) ** np.arange(24))

    def test_commutative_associative(self):
        rng = np.random.default_rng(5)
        mk = lambda: CoeffSeries(rng.normal(size=20) + 1j * rng.normal(size=20))
        F, G, H = mk(), mk(), mk()
        assert np.allclose(hadamard_coeffs(F, G).coefficients,
                           hadamard_coeffs(G, F).coefficients)
        assert np.allclose(
            hadamard_coeffs(hadamard_coeffs(F, G), H).coefficients,
            hadamard_coeffs(F, hadamard_coeffs(G, H)).coefficients)

    def test_truncates_to_shorter(self):
        F = geometric(10)
        G = geometric(20)
        assert len(hadamard_coeffs(F, G)) == 10

    def test_radius_multiplies(self):
        out = hadamard_coeffs(geometric(16, 0.5), geometric(16, 0.25))
        assert out.declared_radius == pytest.approx(8.0)


class TestGermEval:
    def test_exp_at_one(self):
        g = Germ(0.0, exp_series(50).coefficients, math.inf)
        # oracle: direct factorial partial sum at higher truncation
        oracle = sum(1.0 / math.factorial(k) for k in range(80))
        assert abs(germ_eval(g, 1.0) - oracle) < 1e-12

    def test_center_returns_constant_exactly(self):
        g = Germ(0.3 + 0.2j, np.array([2.5 - 1j, 1.0, 3.0]), 1.0)
        assert germ_eval(g, 0.3 + 0.2j) == 2.5 - 1j

    def test_geometric_at_half(self):
        g = Germ(0.0, np.ones(128), 1.0)
        assert abs(germ_eval(g, 0.5) - 2.0) < 1e-13

    def test_outside_disk_raises(self):
        g = Germ(0.0, np.ones(16), 1.0)
        with pytest.raises(OutOfDiskError):
            germ_eval(g, 1.2)

    def test_tail_estimate_reasonable(self):
        g = Germ(0.0, np.ones(64), 1.0)
        est = germ_eval_tail_estimate(g, 0.5)
        true_tail = abs(1.0 / (1.0 - 0.5) - germ_eval(g, 0.5))
        assert true_tail <= 4.0 * est


class TestRecenter:
    def test_geometric_to_half(self):
        g = Germ(0.0, np.ones(256), 1.0)
        out = recenter(g, 0.4)  # step limited by theta * trust
        out = recenter(out.with_radius(0.6), 0.5, 0.4)
        want = 2.0 ** (np.arange(40) + 1)  # 1/(1-z) at 1/2
        assert np.allclose(out.coefficients[:40], want, rtol=1e-10)

    def test_same_center_identity(self):
        g = Germ(0.1, np.arange(10, dtype=complex), 1.0)
        out = recenter(g, 0.1)
        assert out is g

    def test_exp_recentered_at_one(self):
        g = Germ(0.0, exp_series(80).coefficients, math.inf)
        # exp has unbounded trust radius: any finite step is legal
        out = recenter(g, 1.0, theta=1.0)
        e = math.e
        want = np.array([e / math.factorial(k) for k in range(40)])
        assert np.allclose(out.coefficients[:40], want, rtol=1e-12)

    def test_step_violation(self):
        g = Germ(0.0, np.ones(16), 1.0)
        with pytest.raises(StepViolationError):
            recenter(g, 0.9, theta=0.4)

    def test_err_bound_nondecreasing(self):
        g = Germ(0.0, np.ones(64), 1.0, err_bound=1e-9)
        out = recenter(g, 0.2)
        assert out.err_bound >= 1e-9

    def test_two_small_steps_match_one(self):
        rng = np.random.default_rng(9)
        coeffs = (rng.normal(size=96) + 1j * rng.normal(size=96)) * 0.5 ** np.arange(96)
        g = Germ(0.0, coeffs, 2.0)
        one = recenter(g, 0.3 + 0.1j)
        two = recenter(recenter(g, 0.15 + 0.05j), 0.3 + 0.1j)
        for _ in range(20):
            z = (rng.uniform(-0.2, 0.2) + 1j * rng.uniform(-0.2, 0.2)) + (0.3 + 0.1j)
            a = germ_eval(one, z)
            b = germ_eval(two, z)
            assert abs(a - b) <= 1e-10 + one.err_bound + two.err_bound


class TestTaylorShift:
    def test_matches_exact_binomial(self):
        coeffs = np.array([1.0, 2.0, 0.5, -3.0, 1.25], dtype=complex)
        d = 0.3 - 0.2j
        out = taylor_shift(coeffs, d)
        z = 0.17 + 0.05j
        direct = np.polynomial.polynomial.polyval(z + d, coeffs)
        shifted = np.polynomial.polynomial.polyval(z, out)
        assert abs(direct - shifted) < 1e-14


class TestRadiusEstimate:
    def test_geometric(self):
        s = CoeffSeries(2.0 ** np.arange(64))
        assert radius_estimate(s) == pytest.approx(0.5, rel=1e-6)

    def test_sqrt_inv_within_five_percent(self):
        # oracle: ratio test on the exact binomial coefficients (limit 1)
        s = sqrt_inv_series(512)
        assert radius_estimate(s) == pytest.approx(1.0, rel=0.05)

    def test_polynomial_unbounded(self):
        c = np.zeros(64)
        c[:5] = [1, 2, 3, 4, 5]
        assert radius_estimate(CoeffSeries(c)) == math.inf

    def test_needs_sixteen(self):
        with pytest.raises(ValueError):
            radius_estimate(CoeffSeries(np.ones(8)))


def test_coeff_cache_roundtrip(tmp_path):
    s = CoeffSeries(np.array([1.0 + 2.0j, -0.5, 0.25j]), 2.0)
    path = tmp_path / "cache.csv"
    save_coeffs(path, s)
    header = path.read_text().splitlines()[0]
    assert header == "n,re,im"
    back = load_coeffs(path, 2.0)
    assert np.array_equal(back.coefficients, s.coefficients)
