import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fareyzeta import funclib, quad, riemann, zeta
from fareyzeta.zeta import EULER_GAMMA, LOG_2PI, ZetaEvaluator

mpmath.mp.dps = 30


def mp_zeta(sigma: float, t: float) -> complex:
    return complex(mpmath.zeta(mpmath.mpc(sigma, t)))


class TestConstants:
    def test_named_constants(self):
        assert EULER_GAMMA == pytest.approx(float(mpmath.euler), abs=1e-16)
        assert LOG_2PI == pytest.approx(float(mpmath.log(2 * mpmath.pi)), abs=1e-16)
        assert LOG_2PI - EULER_GAMMA == pytest.approx(1.26066, abs=1e-5)

    def test_bernoulli(self):
        b = zeta.bernoulli_even(4)
        assert [str(x) for x in b] == ["1/6", "-1/30", "1/42", "-1/30"]


class TestZetaReal:
    def test_two(self):
        assert zeta.zeta_real(2.0) == pytest.approx(math.pi**2 / 6, abs=1e-12)

    def test_half_limit_definition(self):
        x = 10**6
        k = np.arange(1, x + 1, dtype=float)
        raw = math.fsum(k**-0.5) - 2 * math.sqrt(x)
        # the raw limit expression converges like x^{-1/2}/2; the endpoint term removes it
        assert zeta.zeta_real(0.5) == pytest.approx(raw, abs=1e-3)
        assert zeta.zeta_real(0.5) == pytest.approx(raw - 0.5 / math.sqrt(x), abs=1e-5)

    def test_three_halves_series_plus_tail(self):
        N = 10_000
        k = np.arange(1, N + 1, dtype=float)
        approx = math.fsum(k**-1.5) + 2 / math.sqrt(N) - 0.5 * N**-1.5
        assert zeta.zeta_real(1.5) == pytest.approx(approx, abs=1e-10)

    @given(st.floats(0.05, 40).filter(lambda s: abs(s - 1) > 1e-3))
    @settings(max_examples=40)
    def test_against_mpmath(self, s):
        assert zeta.zeta_real(s) == pytest.approx(float(mpmath.zeta(s)), rel=1e-12)

    def test_pole_and_domain(self):
        with pytest.raises(ValueError):
            zeta.zeta_real(1.0)
        with pytest.raises(ValueError):
            zeta.zeta_real(-0.5)


class TestZetaPoint:
    def test_real_axis(self, ev):
        assert zeta.zeta_point(ev, 0.75, 0.0).real == pytest.approx(zeta.zeta_real(0.75), rel=1e-10)

    def test_first_zero(self, ev):
        assert abs(zeta.zeta_point(ev, 0.5, 14.1347)) < 0.02

    def test_mpmath_grid(self, ev):
        rng = np.random.default_rng(1)
        for sigma, t in zip(rng.uniform(0.4, 1.5, 25), rng.uniform(-3000, 3000, 25)):
            z = zeta.zeta_point(ev, sigma, t)
            ref = mp_zeta(sigma, t)
            assert abs(z - ref) <= 1e-9 * max(1.0, abs(ref))

    def test_vectorised_matches_scalar(self, ev):
        t = np.array([1.0, 10.0, 100.0, 2500.0])
        vec = zeta.zeta_points(ev, 0.5, t)
        for ti, zi in zip(t, vec):
            assert abs(zi - zeta.zeta_point(ev, 0.5, ti)) <= 1e-14 * abs(zi)
        assert np.array_equal(vec, zeta.zeta_points(ev, 0.5, t))

    def test_domain(self, ev):
        with pytest.raises(ValueError):
            zeta.zeta_point(ev, 0.3, 10.0)

    def test_conjugate_symmetry(self, ev):
        rng = np.random.default_rng(2)
        sig = rng.uniform(0.5, 1.0, 20)
        t = rng.uniform(1, 500, 20)
        assert np.allclose(zeta.zeta_points(ev, sig, -t), np.conj(zeta.zeta_points(ev, sig, t)), rtol=1e-13, atol=0)

    def test_ceiling(self, ev):
        with pytest.raises(ValueError):
            zeta.zeta_point(ev, 0.5, 2e4)

    def test_bad_config(self):
        with pytest.raises(ValueError):
            ZetaEvaluator(method="riemann_siegel")
        with pytest.raises(ValueError):
            ZetaEvaluator(target_accuracy=0.0)


class TestApproxFE:
    def test_methods_agree_within_bound(self, ev):
        afe = ZetaEvaluator(method="approx_fe")
        rng = np.random.default_rng(3)
        for sigma, t in zip(rng.uniform(0.5, 1.0, 20), rng.uniform(5, 200, 20)):
            gap = abs(zeta.zeta_point(afe, sigma, t) - zeta.zeta_point(ev, sigma, t))
            assert gap <= zeta.afe_error_bound(afe, sigma, t) + ev.target_accuracy

    def test_gap_at_fifty(self, ev):
        # the plain approximate functional equation is only O(x^{-σ}) accurate
        afe = ZetaEvaluator(method="approx_fe")
        gap = abs(zeta.zeta_point(afe, 0.75, 50.0) - zeta.zeta_point(ev, 0.75, 50.0))
        assert 1e-3 < gap <= zeta.afe_error_bound(afe, 0.75, 50.0)

    def test_rejects_pole_region(self):
        afe = ZetaEvaluator(method="approx_fe")
        with pytest.raises(ValueError):
            zeta.zeta_point(afe, 1.0, 0.0)


class TestDirichletPolynomial:
    def test_single_term(self):
        assert zeta.dirichlet_poly_sq_integral(1, 0.3, 1.5, 4.0) == pytest.approx(2.5)

    def test_against_quadrature(self):
        rng = np.random.default_rng(4)
        cases = [(5, 0.75, 0.0, 1.0)] + [
            (int(n), float(s), *sorted(map(float, rng.uniform(0, 5, 2)))) for n, s in zip(rng.integers(1, 11, 6), rng.uniform(0, 1, 6))
        ]
        for N, sigma, a, b in cases:
            k = np.arange(1, N + 1, dtype=float)

            def f(t):
                t = np.asarray(t, dtype=float)
                z = (k[None, :] ** (-sigma - 1j * t[:, None])).sum(axis=1)
                return np.abs(z) ** 2

            ref = quad.integrate_adaptive(f, a, b, 1e-11).value
            assert zeta.dirichlet_poly_sq_integral(N, sigma, a, b) == pytest.approx(ref, abs=1e-8)

    def test_bad_input(self):
        with pytest.raises(ValueError):
            zeta.dirichlet_poly_sq_integral(0, 0.5, 0, 1)
        with pytest.raises(ValueError):
            zeta.dirichlet_poly_sq_integral(3, 0.5, 1, 1)


class TestLocalIntegral:
    def test_quadrature_against_mpmath(self, ev):
        rep = zeta.local_zeta_integral(ev, 20.0, 21.0, 0.75)
        ref = float(mpmath.quad(lambda t: abs(mpmath.zeta(mpmath.mpc(0.75, t))) ** 2, mpmath.linspace(20, 21, 9)))
        assert rep.value == pytest.approx(ref, abs=1e-8)
        assert rep.converged

    def test_prediction_structure(self, ev):
        rep = zeta.local_zeta_integral(ev, 50.0, 51.0, 0.75)
        s = riemann.quadratic_riemann_sum(funclib.make_gn(50), 51, 0.75)
        assert rep.prediction == pytest.approx(-zeta.zeta_real(1.5) + 4 * s, rel=1e-13)
        assert rep.residual == rep.value - rep.prediction

    def test_residual_shrinks_with_height(self, ev):
        r = [abs(zeta.local_zeta_integral(ev, a, a + 1.0, 0.75).residual) for a in (20.0, 100.0)]
        assert r[1] < r[0]

    def test_half_has_no_prediction(self, ev):
        assert math.isnan(zeta.local_zeta_integral(ev, 10.0, 11.0, 0.5).prediction)

    def test_domain(self, ev):
        with pytest.raises(ValueError):
            zeta.local_zeta_integral(ev, 0.5, 2.0, 0.75)


class TestParseval:
    def test_closed_form(self):
        expected = -(4 / 3) * (zeta.zeta_real(1.5) / 2 + 2 * zeta.zeta_real(0.5))
        pc = zeta.parseval_constant(0.75)
        assert pc.closed_form == pytest.approx(expected, rel=1e-13)
        assert pc.closed_form == pytest.approx(2.1527, abs=1e-4)

    def test_two_routes(self):
        for sigma in (0.6, 0.75, 0.9):
            pc = zeta.parseval_constant(sigma)
            assert pc.agreement < 1e-3

    def test_negative_argument_route(self):
        # ζ(2σ−1) with 2σ−1 < 0 goes through the functional equation
        for s in (-0.8, -0.3):
            assert zeta._zeta_any_real(s) == pytest.approx(float(mpmath.zeta(s)), rel=1e-12)
        pc = zeta.parseval_constant(0.3)
        assert pc.agreement < 1e-3

    @pytest.mark.parametrize("sigma", [0.6, 0.75, 0.9])
    def test_bracket_negative(self, sigma):
        assert zeta.parseval_bracket(sigma) < 0

    def test_half_limit(self):
        assert zeta.parseval_constant(0.5).closed_form == LOG_2PI - EULER_GAMMA

    def test_half_by_quadrature(self, ev):
        rep = zeta.parseval_half(ev, 1000.0)
        assert abs(rep.difference) < 1e-2
        assert rep.converged

    def test_half_rejects_small_cutoff(self, ev):
        with pytest.raises(ValueError):
            zeta.parseval_half(ev, 50.0)


class TestCauchyIntegrals:
    def test_unit_weight_normalisation(self):
        n = 8
        r = quad.integrate_cauchy_kernel(lambda t: np.ones_like(t), float(n), 0.0, 1e-12, 400.0, tail_density=1.0)
        assert r.value * n / math.pi == pytest.approx(1.0, abs=r.error_estimate * n / math.pi + 1e-10)

    def test_lw_truncation_stability(self, ev):
        a = zeta.lw_cauchy_integral(ev, 16, 1600.0)
        b = zeta.lw_cauchy_integral(ev, 16, 3200.0)
        assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate

    def test_symmetric_shortcut(self, ev):
        full = zeta.zeta_cauchy_integral(ev, 0.75, 1.0, 1e-9, 200.0)
        half = zeta.zeta_cauchy_integral(ev, 0.75, 1.0, 0.0, 200.0)
        assert full.core == pytest.approx(half.core, rel=1e-7)

    def test_lw_domain(self, ev):
        with pytest.raises(ValueError):
            zeta.lw_cauchy_integral(ev, 8, 100.0)


class TestMeanValue:
    def test_additivity(self, ev):
        whole = zeta.mean_value(ev, 100.0, 0.5).value
        parts = zeta.zeta_sq_integral(ev, 0.5, 0.0, 50.0, 1e-9).value + zeta.zeta_sq_integral(ev, 0.5, 50.0, 100.0, 1e-9).value
        assert whole == pytest.approx(parts, abs=1e-7)

    def test_against_mpmath_short(self, ev):
        ref = float(mpmath.quad(lambda t: abs(mpmath.zeta(mpmath.mpc(0.5, t))) ** 2, mpmath.linspace(0, 10, 11)))
        assert zeta.mean_value(ev, 10.0, 0.5).value == pytest.approx(ref, abs=1e-7)

    def test_panel_width_limit(self):
        edges = zeta.panel_edges(100.0, 120.0)
        assert np.all(np.diff(edges) <= 2 * math.pi / (4 * math.log(2 * 100.0)) + 1e-12)


class TestStepanov:
    def test_windows_tile(self, ev):
        scan = zeta.stepanov_scan(ev, 0.75, 60)
        whole = zeta.zeta_sq_integral(ev, 0.75, 1.0, 61.0, 1e-9).value
        assert math.fsum(scan.windows) == pytest.approx(whole, abs=1e-7)
        assert np.all(scan.windows > 0)
        assert np.all(np.diff(scan.running_sup) >= 0)

    def test_window_values(self, ev):
        scan = zeta.stepanov_scan(ev, 0.5, 30)
        for n in (1, 14, 30):
            assert scan.windows[n - 1] == pytest.approx(zeta.zeta_sq_integral(ev, 0.5, n, n + 1.0, 1e-10).value, abs=1e-8)


class TestAmalgam:
    def test_half(self):
        k, K = zeta.amalgam_norm_bounds(0.5)
        assert k == pytest.approx(0.8)
        # 2Σ_{w≥0} 1/(b²+w²) = 1/b² + (π/b)coth(πb)
        assert K == pytest.approx(2 / 0.25 + (math.pi / 0.5) / math.tanh(math.pi * 0.5), rel=1e-9)

    def test_K_decreasing(self):
        Ks = [zeta.amalgam_norm_bounds(b)[1] for b in (0.5, 1.0, 2.0)]
        assert Ks[0] > Ks[1] > Ks[2]

    def test_sandwich_on_zeta(self, ev):
        b, sigma, T = 0.5, 0.75, 600.0
        k, K = zeta.amalgam_norm_bounds(b)
        scan = zeta.stepanov_scan(ev, sigma, int(T))
        first = zeta.zeta_sq_integral(ev, sigma, 0.0, 1.0, 1e-10).value
        sup_window = max(first, float(scan.windows.max()))
        for u in (0.0, 10.0, 100.0):
            ci = zeta.zeta_cauchy_integral(ev, sigma, b, u, T)
            local = zeta.zeta_sq_integral(ev, sigma, u, u + 1.0, 1e-10).value
            assert k * local <= ci.value <= K * sup_window
