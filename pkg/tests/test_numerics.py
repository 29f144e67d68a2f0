"""Quadrature and gamma primitives."""

import cmath
import math

import numpy as np
import pytest

from monodromy_lab.errors import (
    ContourSingularityError,
    NonIntegrableEndpointError,
    PoleError,
)
from monodromy_lab.numerics import (
    QuadratureConfig,
    agm,
    circle_integral,
    complex_gamma,
    segment_integral_singular,
    unit_integral_singular,
)

CFG = QuadratureConfig()


class TestCircleIntegral:
    def test_simple_pole_at_center(self):
        assert abs(circle_integral(lambda u: 1.0 / u, 0.0, 1.0, CFG) - 1.0) < 1e-14

    def test_no_residue(self):
        assert abs(circle_integral(lambda u: u * u, 0.0, 1.0, CFG)) < 1e-14

    def test_enclosed_simple_pole(self):
        v = circle_integral(lambda u: 1.0 / (u - 0.5), 0.0, 1.0, CFG)
        assert abs(v - 1.0) < 1e-13

    def test_polynomial_has_no_residue(self):
        rng = np.random.default_rng(7)
        coeffs = rng.normal(size=6) + 1j * rng.normal(size=6)
        f = lambda u: complex(np.polynomial.polynomial.polyval(u, coeffs))
        assert abs(circle_integral(f, 0.3 + 0.1j, 2.0, CFG)) < 1e-12

    def test_node_doubling_invariance(self):
        f = lambda u: cmath.exp(u) / (u - 0.2)
        v1 = circle_integral(f, 0.0, 1.0, QuadratureConfig(circle_nodes=256))
        v2 = circle_integral(f, 0.0, 1.0, QuadratureConfig(circle_nodes=512))
        assert abs(v1 - v2) <= CFG.abs_tol

    def test_singularity_on_contour(self):
        with np.errstate(divide="ignore", invalid="ignore"):
            with pytest.raises(ContourSingularityError):
                circle_integral(lambda u: 1.0 / (u - 1.0), 0.0, 1.0, CFG)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            QuadratureConfig(circle_nodes=8)
        with pytest.raises(ValueError):
            QuadratureConfig(de_level=1)
        with pytest.raises(ValueError):
            QuadratureConfig(abs_tol=0.0)


class TestSegmentIntegral:
    def test_constant(self):
        assert abs(segment_integral_singular(lambda u: 1.0, 0.0, 1.0, CFG) - 1.0) < 1e-14

    def test_inverse_sqrt(self):
        v = segment_integral_singular(lambda u: u ** -0.5, 0.0, 1.0, CFG)
        assert abs(v - 2.0) < 1e-13

    def test_beta_half_half(self):
        # oracle: adaptive composite quadrature with interval splitting,
        # refined until stable (= pi analytically); the f(u) interface floor
        # at the u = 1 endpoint caps accuracy near 1e-8
        f = lambda u: u ** -0.5 * (1.0 - u) ** -0.5
        v = segment_integral_singular(f, 0.0, 1.0, CFG)
        assert abs(v - math.pi) < 5e-8

    def test_additivity_under_splitting(self):
        f = lambda u: cmath.log(u) * cmath.exp(u)
        whole = segment_integral_singular(f, 0.0, 1.0, CFG)
        rng = np.random.default_rng(3)
        for _ in range(5):
            m = rng.uniform(0.2, 0.8)
            split = segment_integral_singular(f, 0.0, m, CFG) \
                + segment_integral_singular(f, m, 1.0, CFG)
            assert abs(whole - split) <= 2 * CFG.abs_tol

    def test_complex_segment(self):
        a, b = 0.2 + 0.1j, 1.0 - 0.4j
        v = segment_integral_singular(lambda u: u * u, a, b, CFG)
        assert abs(v - (b ** 3 - a ** 3) / 3.0) < 1e-13

    def test_non_integrable_endpoint(self):
        with pytest.raises(NonIntegrableEndpointError):
            segment_integral_singular(lambda u: 1.0 / u, 0.0, 1.0, CFG)

    def test_distance_aware_beta_full_accuracy(self):
        fn = lambda x, d0, d1: 1.0 / math.sqrt(d0 * d1)
        assert abs(unit_integral_singular(fn, CFG) - math.pi) < 1e-13


class TestGamma:
    def test_one(self):
        assert abs(complex_gamma(1.0) - 1.0) < 1e-14

    def test_half(self):
        assert abs(complex_gamma(0.5) - math.sqrt(math.pi)) < 1e-13

    def test_factorial(self):
        assert abs(complex_gamma(5.0) - 24.0) < 1e-12

    def test_pole(self):
        for z in (0.0, -1.0, -7.0):
            with pytest.raises(PoleError):
                complex_gamma(z)

    def test_recurrence_on_random_grid(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            z = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
            if abs(z.imag) < 1e-3 and z.real <= 0.5:
                continue
            lhs = complex_gamma(z + 1.0)
            rhs = z * complex_gamma(z)
            assert abs(lhs - rhs) <= CFG.rel_tol * abs(lhs)

    def test_reflection_accuracy(self):
        # Gamma(1/3) Gamma(2/3) = 2 pi / sqrt(3)
        v = complex_gamma(1.0 / 3.0) * complex_gamma(2.0 / 3.0)
        assert abs(v - 2.0 * math.pi / math.sqrt(3.0)) < 1e-12


def test_agm_known_value():
    # lemniscatic: agm(1, sqrt(2)) relates to Gamma(1/4)
    v = agm(1.0, math.sqrt(2.0))
    want = math.sqrt(2) * math.sqrt(math.pi) ** 3 / complex_gamma(0.25).real ** 2 * 2
    assert abs(v - want) < 1e-12
