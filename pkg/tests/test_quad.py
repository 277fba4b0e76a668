import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fareyzeta import quad


class TestAdaptive:
    def test_cosine(self):
        r = quad.integrate_adaptive(lambda t: np.cos(2 * np.pi * t), 0.0, 1.0, 1e-10)
        assert abs(r.value) < 1e-10 and r.converged

    def test_log_two(self):
        r = quad.integrate_adaptive(lambda t: 1.0 / t, 1.0, 2.0, 1e-12)
        assert r.value == pytest.approx(math.log(2), abs=1e-12)

    def test_damped_sinc(self):
        # ∫_0^∞ sin(t)/t·e^{−t} dt = arctan 1; the cut at 60 drops less than e^{−60}
        def f(t):
            t = np.asarray(t, dtype=float)
            return np.sinc(t / np.pi) * np.exp(-t)

        r = quad.integrate_adaptive(f, 0.0, 60.0, 1e-11)
        assert r.value == pytest.approx(math.pi / 4, abs=1e-10)

    @settings(max_examples=40)
    @given(st.lists(st.floats(-5, 5), min_size=6, max_size=6), st.floats(-3, 0), st.floats(0.1, 3))
    def test_polynomials_exact(self, coeffs, a, width):
        b = a + width
        poly = np.polynomial.Polynomial(coeffs)
        exact = poly.integ()(b) - poly.integ()(a)
        r = quad.integrate_adaptive(poly, a, b, 1e-12)
        assert r.value == pytest.approx(exact, rel=1e-13, abs=1e-12)

    def test_converged_error_within_tol(self):
        r = quad.integrate_adaptive(lambda t: np.sqrt(t), 0.0, 1.0, 1e-9)
        assert r.converged and r.error_estimate <= 1e-9

    def test_budget_exhaustion_reported(self):
        r = quad.integrate_adaptive(lambda t: np.sin(1.0 / (t + 1e-6)), 0.0, 1.0, 1e-14, max_panels=50)
        assert not r.converged

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            quad.integrate_adaptive(np.cos, 1.0, 1.0, 1e-8)
        with pytest.raises(ValueError):
            quad.integrate_adaptive(np.cos, 0.0, 1.0, 0.0)

    def test_deterministic(self):
        f = lambda t: np.exp(np.sin(7 * t))  # noqa: E731
        a = quad.integrate_adaptive(f, 0.0, 3.0, 1e-10)
        b = quad.integrate_adaptive(f, 0.0, 3.0, 1e-10)
        assert a == b


class TestPanels:
    def test_gk_exact_on_polynomials(self):
        poly = np.polynomial.Polynomial([1, -2, 0.5, 3, 0, 1, 0.25])
        exact = poly.integ()(2.0) - poly.integ()(-1.0)
        r = quad.integrate_panels(poly, -1.0, 2.0, 1e-12)
        assert r.value == pytest.approx(exact, rel=1e-14)

    def test_oscillatory(self):
        r = quad.integrate_panels(lambda t: np.cos(40 * t), 0.0, 10.0, 1e-10, max_width=0.1)
        assert r.value == pytest.approx(math.sin(400) / 40, abs=1e-10)

    def test_detailed_tiles_interval(self):
        d = quad.integrate_panels_detailed(np.exp, 0.0, 3.0, 1e-10, max_width=0.5)
        assert d.lo[0] == 0.0 and d.hi[-1] == 3.0
        assert np.all(d.lo[1:] == d.hi[:-1])
        assert d.summary(1e-10).value == pytest.approx(math.e**3 - 1, rel=1e-13)

    def test_width_callable(self):
        r = quad.integrate_panels(np.cos, 0.0, 5.0, 1e-10, max_width=lambda x: 0.2 + 0.1 * x)
        assert r.value == pytest.approx(math.sin(5.0), abs=1e-12)

    def test_batched_mode(self):
        def f(lo, hi):
            return np.sin(quad.gk_nodes(lo, hi))

        r = quad.integrate_panels(f, 0.0, math.pi, 1e-12, batched=True)
        assert r.value == pytest.approx(2.0, abs=1e-12)

    def test_edges_validated(self):
        with pytest.raises(ValueError):
            quad.integrate_panels(np.cos, 0.0, 1.0, 1e-8, edges=np.array([0.0, 0.7, 0.5, 1.0]))


class TestSingularPower:
    @pytest.mark.parametrize("sigma", [0.0, 0.3, 0.75, 0.95])
    def test_pure_power(self, sigma):
        r = quad.integrate_singular_power(lambda t: np.ones_like(t), sigma, 1e-12)
        assert r.value == pytest.approx(1 / (1 - sigma), rel=1e-12)

    def test_cosine_series(self):
        sigma = 0.75
        series = math.fsum(
            (-1) ** m * (2 * math.pi) ** (2 * m) / (math.factorial(2 * m) * (2 * m + 1 - sigma)) for m in range(60)
        )
        r = quad.integrate_singular_power(lambda t: np.cos(2 * np.pi * t), sigma, 1e-12)
        assert r.value == pytest.approx(series, abs=1e-10)

    def test_sine_log(self):
        def u(t):
            t = np.asarray(t, dtype=float)
            out = np.zeros_like(t)
            pos = (t > 0) & (t < 1)
            L = np.log(t[pos])
            out[pos] = np.sin(L) / L
            out[t == 1] = 1.0
            return out

        r = quad.integrate_singular_power(u, 0.5, 1e-11)
        assert r.value == pytest.approx(math.atan(2.0), abs=1e-9)

    def test_matches_adaptive_with_tail(self):
        eps = 1e-6
        head = quad.integrate_adaptive(lambda t: np.ones_like(t), eps, 1.0, 1e-13).value
        assert quad.integrate_singular_power(lambda t: np.ones_like(t), 0.0, 1e-13).value == pytest.approx(head + eps)

    def test_range(self):
        with pytest.raises(ValueError):
            quad.integrate_singular_power(np.cos, 1.0, 1e-8)


class TestCauchyKernel:
    def test_normalisation_with_tail(self):
        b, T = 0.5, 1000.0
        r = quad.integrate_cauchy_kernel(lambda t: np.ones_like(t), b, 0.0, 1e-10, T, tail_density=1.0)
        assert r.value == pytest.approx(2 * (1 / b) * math.atan(T / b), abs=1e-9)
        assert abs(r.value - 2 * math.pi) <= r.error_estimate + 1e-9

    def test_closed_form_tail(self):
        b, u, T = 1.0, 3.0, 50.0
        tail = quad.cauchy_tail(1.0, b, u, T)
        numeric = quad.cauchy_tail(lambda t: np.ones_like(t), b, u, T)
        assert tail == pytest.approx(numeric, rel=1e-8)

    def test_partial_fractions(self):
        r = quad.integrate_cauchy_kernel(lambda t: 1.0 / (1.0 + t * t), 1.0, 0.0, 1e-11, 1e4, max_width=5.0)
        assert r.value == pytest.approx(math.pi / 2, abs=1e-8)

    def test_rejects_bad_geometry(self):
        with pytest.raises(ValueError):
            quad.integrate_cauchy_kernel(np.cos, 1.0, 10.0, 1e-8, 5.0)
        with pytest.raises(ValueError):
            quad.integrate_cauchy_kernel(np.cos, 0.0, 0.0, 1e-8, 5.0)
