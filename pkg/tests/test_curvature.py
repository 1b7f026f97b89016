import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import example_specs

from midsoliton.curvature import (CONSTANT_KGA, ELLIPSE, HOMOTHETY_SHEAR, HYPERBOLA, LINE,
                                  PARABOLA, ArcLengthMap, SCALING, SHEAR, SIMILARITY,
                                  TRANSLATION_COMPOSITE, arclength_map, beta, classify,
                                  equi_affine_curvature_constant, family_type,
                                  finite_difference_stencil, general_affine_curvature,
                                  k_invariant, numeric_equi_affine_curvature, oriented)
from midsoliton.curve import CurveSamples, SolitonSpec, sample
from midsoliton.errors import DegenerateCurve, DimensionError, UndefinedInvariant

SPECS = example_specs()


def closed_form_kga(lam):
    return -2 * abs(lam + 1) / math.sqrt(abs((lam - 2) * (2 * lam - 1)))


def analytic_samples(c, dc, ddc, t0, t1, count=9):
    ts = np.linspace(t0, t1, count)
    return CurveSamples(ts, np.array([c(t) for t in ts]),
                        evaluate=c, differentiate=lambda t: (dc(t), ddc(t)))


def ellipse(a, b):
    return analytic_samples(lambda t: np.array([a * math.cos(t), b * math.sin(t)]),
                            lambda t: np.array([-a * math.sin(t), b * math.cos(t)]),
                            lambda t: np.array([-a * math.cos(t), -b * math.sin(t)]), -1.0, 1.0)


def hyperbola():
    return analytic_samples(lambda t: np.array([math.cosh(t), math.sinh(t)]),
                            lambda t: np.array([math.sinh(t), math.cosh(t)]),
                            lambda t: np.array([math.cosh(t), math.sinh(t)]), -1.0, 1.0)


class TestBeta:
    def test_parabola_orientation_flip(self, parabola):
        assert beta(parabola) == 1.0
        assert oriented(parabola) == parabola.reversed()

    @pytest.mark.parametrize("lam", [3.0, -2.0, 0.5, 1.5])
    def test_diagonal(self, lam):
        spec = SolitonSpec(np.diag([1.0, lam]), [0, 0], [1, 1])
        assert beta(spec) == pytest.approx(abs(lam * (lam - 1)) ** (1 / 3), rel=1e-15)

    def test_line(self):
        assert beta(SolitonSpec(np.zeros((2, 2)), [1, 0], [0, 0])) == 0.0

    def test_eigenvector_velocity(self):
        assert beta(SolitonSpec(np.diag([2.0, 3.0]), [0, 0], [1, 0])) == 0.0

    def test_dimension(self):
        with pytest.raises(DimensionError):
            beta(SolitonSpec(np.eye(3), [0, 0, 0], [1, 1, 1]))


class TestKInvariant:
    def test_shear_homothety(self):
        assert k_invariant([[1, 1], [0, 1]]) == pytest.approx(0.25, rel=1e-15)

    @pytest.mark.parametrize("lam", [3.0, -2.0, 0.25, 1.5, 7.0])
    def test_diagonal(self, lam):
        assert k_invariant(np.diag([1.0, lam])) == pytest.approx(-2 + 9 * lam / (1 + lam) ** 2,
                                                                 rel=1e-14)

    def test_traceless(self):
        assert k_invariant([[0, 1], [0, 0]]) is None

    def test_dimension(self):
        with pytest.raises(DimensionError):
            k_invariant(np.eye(3))

    @settings(max_examples=60, deadline=None)
    @given(st.floats(-3, 3).filter(lambda m: abs(m) > 0.05))
    def test_time_rescaling(self, mu):
        B = np.array([[1.0, 1.0], [0.0, 1.0]])
        assert k_invariant(mu * B) == pytest.approx(k_invariant(B), rel=1e-12)
        assert general_affine_curvature(mu * B) == pytest.approx(-4.0, rel=1e-12)

    def test_similarity_invariance(self, rng):
        for _ in range(50):
            B = rng.normal(size=(2, 2))
            if abs(np.trace(B)) < 0.1:
                continue
            G = rng.normal(size=(2, 2))
            if np.linalg.cond(G) > 1e3:
                continue
            C = G @ B @ np.linalg.inv(G)
            assert math.isclose(k_invariant(C), k_invariant(B), rel_tol=1e-10, abs_tol=1e-10)


class TestGeneralAffineCurvature:
    def test_lambda_three(self):
        assert general_affine_curvature(np.diag([1.0, 3.0])) == pytest.approx(-8 / math.sqrt(5),
                                                                             rel=1e-14)
        assert closed_form_kga(3.0) == pytest.approx(-8 / math.sqrt(5), rel=1e-15)

    def test_rotation_scaling(self):
        a, b = 0.6, 0.8
        expected = -4 * 0.6 / math.sqrt(9 - 8 * 0.36)
        assert expected == pytest.approx(-0.970143, abs=1e-6)
        assert general_affine_curvature([[a, -b], [b, a]]) == pytest.approx(expected, abs=1e-12)

    def test_shear_homothety(self):
        assert general_affine_curvature([[1, 1], [0, 1]]) == pytest.approx(-4.0, abs=1e-12)

    def test_undefined(self):
        with pytest.raises(UndefinedInvariant):
            general_affine_curvature([[0, 1], [-1, 0]])
        # k = 0: det / tau^2 = 2/9
        with pytest.raises(UndefinedInvariant):
            general_affine_curvature(np.diag([1.0, 0.5]))


class TestClassify:
    def test_parabola(self, parabola):
        r = classify(parabola)
        assert (r.kind, r.epsilon, r.family_type) == (PARABOLA, 0, SHEAR)
        assert r.k is None and r.kga is None and r.beta == 1.0

    def test_example_c(self):
        r = classify(SPECS["c"])
        assert (r.kind, r.epsilon, r.family_type) == (CONSTANT_KGA, 1, HOMOTHETY_SHEAR)
        assert r.kga == pytest.approx(-4.0, abs=1e-10)

    def test_example_b(self):
        r = classify(SPECS["b"])
        assert (r.kind, r.epsilon, r.family_type) == (CONSTANT_KGA, -1, SCALING)
        assert r.kga == pytest.approx(-math.sqrt(2), abs=1e-10)

    def test_example_d(self):
        r = classify(SPECS["d"])
        assert (r.kind, r.family_type) == (CONSTANT_KGA, SIMILARITY)
        assert r.kga == pytest.approx(-4 * 0.6 / math.sqrt(9 - 8 * 0.36), abs=1e-10)

    def test_line(self):
        r = classify(SolitonSpec(np.zeros((2, 2)), [1, 0], [0, 0]))
        assert (r.kind, r.epsilon, r.family_type) == (LINE, 0, TRANSLATION_COMPOSITE)
        assert r.k is None and r.kga is None

    @pytest.mark.parametrize("sign,kind", [(1, ELLIPSE), (-1, HYPERBOLA)])
    def test_traceless_trichotomy(self, sign, kind):
        r = classify(SolitonSpec([[0, 1], [-sign, 0]], [0, 0], [1, 0]))
        assert (r.kind, r.epsilon) == (kind, sign)

    def test_k_zero_is_parabola(self):
        # diag(1, 1/2): det / tau^2 = 2/9 so k = 0
        r = classify(SolitonSpec(np.diag([1.0, 0.5]), [0, 0], [1, 1]))
        assert r.kind == PARABOLA and r.epsilon == 0 and r.kga is None

    def test_lambda_sweep(self):
        lams = [l for l in np.linspace(-4, 6, 401)
                if min(abs(l), abs(l - 0.5), abs(l - 1), abs(l - 2), abs(l + 1)) > 1e-6]
        for lam in lams:
            r = classify(SolitonSpec(np.diag([1.0, lam]), [0, 0], [1, 1]))
            assert r.kga == pytest.approx(closed_form_kga(lam), abs=1e-10)
            if 0.5 < lam < 2:
                assert r.epsilon == 1 and r.kga < -4
            else:
                assert r.epsilon == -1 and -math.sqrt(2) != r.kga and -math.inf < r.kga < 0

    def test_report_invariants(self, rng):
        for _ in range(100):
            spec = SolitonSpec(rng.normal(size=(2, 2)), rng.normal(size=2), rng.normal(size=2))
            r = classify(spec)
            if r.kind == CONSTANT_KGA:
                assert r.kga == pytest.approx(-2 / math.sqrt(abs(r.k)), rel=1e-15)
                assert r.kga < 0 and r.epsilon == (1 if r.k > 0 else -1)
            assert r.beta > 0 or r.kind == LINE

    def test_summary(self):
        assert classify(SPECS["c"]).summary().startswith("kind=constant-kga kga=-4")

    def test_dimension(self):
        with pytest.raises(DimensionError):
            classify(SolitonSpec(np.eye(3), [0, 0, 0], [1, 1, 1]))


class TestFamilyType:
    @pytest.mark.parametrize("B,expected", [
        (np.diag([1.0, 2.0]), SCALING),
        (2 * np.eye(2), SCALING),
        ([[0, -1], [1, 0]], SIMILARITY),
        ([[0, 1], [0, 0]], SHEAR),
        ([[2, 1], [0, 2]], HOMOTHETY_SHEAR),
        (np.zeros((2, 2)), TRANSLATION_COMPOSITE),
    ])
    def test_mapping(self, B, expected):
        assert family_type(B) == expected


class TestArcLength:
    def test_traceless_unit(self, parabola):
        m = arclength_map(parabola)
        assert m.kind == "proportional-linear"
        assert m.sigma_ea(2.5) == 2.5

    @pytest.mark.parametrize("b", [0.5, 1.0, 3.0])
    def test_trace_two_exponential(self, b):
        m = ArcLengthMap("exponential", b, 2.0)
        for t in (-1.0, 0.0, 2.0):
            assert m.sigma_ea(t) == pytest.approx(1.5 * b * math.exp(2 * t / 3), rel=1e-15)

    def test_identity_generator_is_degenerate(self):
        # every velocity is an eigenvector of B = I, so beta vanishes
        with pytest.raises(DegenerateCurve):
            arclength_map(SolitonSpec(np.eye(2), [1, 0], [0.5, -1.0]))

    def test_example_c_exponential(self):
        m = arclength_map(SPECS["c"])
        assert (m.kind, m.beta, m.tau) == ("exponential", 1.0, 2.0)
        assert m.sigma_ea(1.2) == pytest.approx(1.5 * math.exp(0.8), rel=1e-15)

    def test_example_c_general_affine_rate(self):
        m = arclength_map(SPECS["c"])
        assert m.ga_rate == pytest.approx(1 / 3, rel=1e-14)
        assert m.sigma_ga(3.0) == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("name", sorted(SPECS))
    def test_round_trip(self, name):
        m = arclength_map(SPECS[name])
        ts = np.linspace(-2, 2, 41)
        np.testing.assert_allclose(m.t_of_sigma(m.sigma_ea(ts)), ts, rtol=0, atol=1e-12)
        assert np.all(np.diff(m.sigma_ea(ts)) > 0)

    def test_matches_quadrature(self):
        spec = SPECS["a_lambda3"]
        m = arclength_map(spec)
        smp = sample(spec, -1, 1, 3)
        from midsoliton.curvature import _ArcLengthTable
        table = _ArcLengthTable(smp.differentiate, -1.0, 1.0, 512, m.sigma_ea(-1.0))
        assert table(0.7) == pytest.approx(m.sigma_ea(0.7), rel=1e-12)

    def test_degenerate(self):
        with pytest.raises(DegenerateCurve):
            arclength_map(SolitonSpec(np.zeros((2, 2)), [1, 0], [0, 0]))

    def test_undefined_general_affine(self, parabola):
        with pytest.raises(UndefinedInvariant):
            arclength_map(parabola).sigma_ga(1.0)

    def test_traceless_constant(self):
        spec = SolitonSpec([[0, 1], [-4, 0]], [0, 0], [1, 0])
        # c(t) = (cos 2t, -2 sin 2t): ellipse with a b = 2
        assert equi_affine_curvature_constant(spec) == pytest.approx(4 / 16 ** (2 / 3), rel=1e-14)
        assert equi_affine_curvature_constant(spec) == pytest.approx(2 ** (-2 / 3), rel=1e-14)


class TestNumericOracle:
    def test_stencil_on_cubic(self):
        h = 0.1
        P = np.array([[(m * h) ** 3, (m * h) ** 2] for m in range(-4, 5)])
        d1, d2, d3 = finite_difference_stencil(P, h)
        np.testing.assert_allclose(d1, [0, 0], atol=1e-12)
        np.testing.assert_allclose(d2, [0, 2], atol=1e-10)
        np.testing.assert_allclose(d3, [6, 0], atol=1e-8)

    def test_ellipse(self):
        out = numeric_equi_affine_curvature(ellipse(2.0, 1.0))
        kappa = np.array([k for _, k in out])
        np.testing.assert_allclose(kappa, 2 ** (-2 / 3), rtol=1e-3)

    def test_hyperbola(self):
        out = numeric_equi_affine_curvature(hyperbola())
        np.testing.assert_allclose([k for _, k in out], -1.0, rtol=1e-3)

    def test_parabola(self, parabola):
        out = numeric_equi_affine_curvature(sample(parabola, -1, 1, 9), points=9)
        assert max(abs(k) for _, k in out) <= 1e-6

    @pytest.mark.parametrize("name", ["a_lambda3", "c"])
    def test_matches_k_over_sigma_squared(self, name):
        spec = SPECS[name]
        k = k_invariant(spec.B)
        sigma0 = arclength_map(spec).sigma_ea(-1.0)
        out = numeric_equi_affine_curvature(sample(spec, -1, 1, 9), sigma0=sigma0, points=9)
        for s, kappa in out:
            assert kappa * s * s == pytest.approx(k, rel=1e-3)

    def test_requires_callables(self):
        smp = CurveSamples([0, 1], [[0, 0], [1, 1]])
        with pytest.raises(ValueError):
            numeric_equi_affine_curvature(smp)

    def test_panel_minimum(self, parabola):
        with pytest.raises(ValueError):
            numeric_equi_affine_curvature(sample(parabola, -1, 1, 3), panels=100)

    def test_degenerate(self):
        line = sample(SolitonSpec(np.zeros((2, 2)), [1, 0], [0, 0]), 0, 1, 3)
        with pytest.raises(DegenerateCurve):
            numeric_equi_affine_curvature(line)
