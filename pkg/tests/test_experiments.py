import math

import numpy as np
import pytest

from fareyzeta import experiments as ex
from fareyzeta import funclib
from fareyzeta.experiments import INFORMATIONAL, SuiteConfig


@pytest.fixture(scope="module")
def cfg():
    return SuiteConfig(sieve_limit=20_000)


class TestMakeReport:
    def test_bound_decides(self):
        assert ex.make_report("x", {}, 1.05, 1.0, bound=0.1).passed
        assert not ex.make_report("x", {}, 1.2, 1.0, bound=0.1).passed

    def test_bound_overrides_passed(self):
        assert not ex.make_report("x", {}, 2.0, 1.0, bound=0.1, passed=True).passed

    def test_nan_fails(self):
        assert not ex.make_report("x", {}, math.nan, 1.0, bound=1.0).passed

    def test_informational_never_fails(self):
        r = ex.make_report("x", {}, 5.0, 0.0, bound=1.0, flag=INFORMATIONAL)
        assert r.passed and r.flag == INFORMATIONAL

    def test_residual_sign(self):
        assert ex.make_report("x", {}, 1.0, 3.0).residual == -2.0

    def test_runtime_zero_without_start(self):
        assert ex.make_report("x", {}, 1.0, 1.0).runtime_ms == 0


class TestEnvelope:
    def _row(self, n, resid, env):
        return ex.make_report("e", {"n": n, "envelope": env}, resid, 0.0)

    def test_fits_on_smallest(self):
        rows = ex.apply_envelope([self._row(100, 0.8, 1.0), self._row(10, 1.0, 2.0)])
        assert all(r.params["fitted_constant"] == 0.5 and r.params["fitted_at"] == 10 for r in rows)
        assert rows[0].bound == pytest.approx(2 * 0.5 * 1.0)
        assert rows[0].passed

    def test_violation(self):
        rows = ex.apply_envelope([self._row(10, 1.0, 1.0), self._row(100, 3.0, 1.0)])
        assert rows[0].passed and not rows[1].passed

    def test_exact_identity_floor(self):
        rows = ex.apply_envelope([self._row(10, 0.0, 1.0), self._row(100, 1e-13, 1.0)])
        assert rows[0].params["fitted_constant"] == 1e-12 and rows[1].passed

    def test_empty(self):
        assert ex.apply_envelope([]) == []


class TestSuiteConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SuiteConfig(threads=0)
        with pytest.raises(ValueError):
            SuiteConfig(tolerance=0.0)

    def test_tables_grow_on_demand(self, cfg):
        assert cfg.tables(30_000).limit >= 30_000


class TestRunSuite:
    def test_empty(self, cfg):
        assert ex.run_suite([], cfg) == []

    def test_unknown_rejected(self, cfg):
        with pytest.raises(KeyError):
            ex.run_suite(["varpi", "nope"], cfg)

    def test_order_kept(self, cfg):
        names = [r.name for r in ex.run_suite(["jordan", "varpi"], cfg)]
        assert names == ["jordan_identity", "varpi_g", "varpi_cos"]

    def test_threads_same_output(self):
        a = ex.run_suite(["jordan", "varpi"], SuiteConfig(sieve_limit=20_000, threads=1))
        b = ex.run_suite(["jordan", "varpi"], SuiteConfig(sieve_limit=20_000, threads=2))
        strip = lambda rs: [(r.name, r.computed, r.predicted, r.passed) for r in rs]  # noqa: E731
        assert strip(a) == strip(b)

    def test_registry(self):
        assert ex.DEFAULT_SUITE[0] == "identities" and len(ex.DEFAULT_SUITE) == len(ex.EXPERIMENTS)


class TestIdentitySuite:
    def test_small_run_passes(self, cfg):
        reps = ex.identity_suite(cfg, farey_n=60, mertens_n=2000)
        assert [r.name for r in reps] == [
            "mertens_divisor_sum",
            "farey_dual_path",
            "riemann_fourier_form",
            "quadratic_fourier_forms",
            "farey_error_fourier_form",
            "mobius_roundtrip",
        ]
        assert all(r.passed for r in reps)

    def test_limits(self, cfg):
        with pytest.raises(ValueError):
            ex.identity_suite(cfg, farey_n=2)


class TestMobiusDoubleSums:
    def test_regimes(self, small_tables):
        names = {s: [r.name for r in ex.lemma_mobius_sums(s, 1000, small_tables)] for s in (0.25, 0.5, 0.75, 1.0)}
        assert names == {
            0.25: ["lemma_b1", "lemma_b2"],
            0.5: ["lemma_c1", "lemma_c2"],
            0.75: ["lemma_a1", "lemma_a2"],
            1.0: ["lemma_d1", "lemma_d2"],
        }

    def test_second_sum_tends_to_one(self, small_tables):
        r = ex.lemma_mobius_sums(0.75, 10_000, small_tables)[1]
        assert abs(r.residual) < 0.05

    def test_sigma_range(self, small_tables):
        with pytest.raises(ValueError):
            ex.lemma_mobius_sums(0.0, 100, small_tables)


class TestAsymptoticChecks:
    def test_cosine_sum_at_one(self, small_tables):
        # F_1 = {1/1}: the sum is cos(2π) = 1
        assert ex.theorem_t1a_check(1, 0.75, small_tables).computed == pytest.approx(1.0)

    def test_cosine_sum_sigma_range(self, small_tables):
        with pytest.raises(ValueError):
            ex.theorem_t1a_check(10, 1.0, small_tables)

    def test_farey_family_regimes(self, small_tables):
        p = funclib.make_trig_polynomial({0: 1.0, 2: 0.25, -2: 0.25})
        with pytest.raises(ValueError):
            ex.theorem_fp_check("fp4_i", p, 100, 0.75, small_tables)
        with pytest.raises(ValueError):
            ex.theorem_fp_check("fp1_i", p, 100, 1.0, small_tables)
        with pytest.raises(ValueError):
            ex.theorem_fp_check("fp9", p, 100, 0.75, small_tables)

    def test_unweighted_exact_form_tracks(self, small_tables):
        p = funclib.make_trig_polynomial({0: 1.0, 2: 0.25, -2: 0.25})
        r = ex.theorem_fp_check("fp4_i", p, 2000, 1.0, small_tables)
        assert abs(r.residual) < 1.0

    def test_farey_family_needs_fourier(self, small_tables):
        with pytest.raises(ValueError):
            ex.theorem_fp_check("fp1_i", funclib.make_g(1.0), 100, 0.75, small_tables)

    def test_limit_form_carries_diagonal(self):
        p = funclib.make_trig_polynomial({0: 1.0, 3: 0.5, -3: 0.5})
        r = ex.theorem_p1_check(p, 0.75, 500)
        assert r.params["diagonal_correction"] == pytest.approx(2.0)
        with pytest.raises(ValueError):
            ex.theorem_p1_check(p, 0.5, 500)

    def test_limit_form_residual_shrinks(self):
        p = funclib.make_trig_polynomial({0: 1.0, 3: 0.5, -3: 0.5})
        small, large = (ex.theorem_p1_check(p, 0.75, n) for n in (200, 2000))
        assert abs(large.residual) < abs(small.residual)


class TestJordanBound:
    def test_positive_and_decreasing_in_truncation(self, small_tables):
        b1 = ex.jordan_truncation_bound(small_tables, 50, 1.5, 1000, 0.2)
        b2 = ex.jordan_truncation_bound(small_tables, 50, 1.5, 10_000, 0.2)
        assert 0 < b2 < b1


class TestPrimeSupported:
    def test_coefficients(self):
        p = ex._prime_supported_poly()
        assert set(p.fourier) == {0, 2, -2, 3, -3, 5, -5, 7, -7}
        x = np.linspace(0.01, 1, 7)
        assert np.allclose(p(x), p.fourier_value(x), atol=1e-12)
