import math

import mpmath
import numpy as np
import pytest

from fareyzeta import walk
from fareyzeta.walk import WalkConfig


class TestCauchySampling:
    def test_median(self):
        x = walk.sample_cauchy_array(np.random.default_rng(0), 100_000)
        assert abs(float(np.median(x))) < 0.02

    def test_cdf_at_one(self):
        n = 100_000
        x = walk.sample_cauchy_array(np.random.default_rng(1), n)
        p = 0.5 + math.atan(1.0) / math.pi
        assert abs(float(np.mean(x <= 1.0)) - p) <= 3 * math.sqrt(p * (1 - p) / n)

    def test_reproducible(self):
        a = walk.sample_cauchy_array(np.random.default_rng(42), 50)
        b = walk.sample_cauchy_array(np.random.default_rng(42), 50)
        assert np.array_equal(a, b)

    def test_scalar_matches_array(self):
        rng1, rng2 = np.random.default_rng(7), np.random.default_rng(7)
        scalars = [walk.sample_cauchy(rng1) for _ in range(5)]
        assert np.array_equal(np.array(scalars), walk.sample_cauchy_array(rng2, 5))

    def test_finite(self):
        x = walk.sample_cauchy_array(np.random.default_rng(3), 1_000_000)
        assert np.all(np.isfinite(x))


class TestWalkConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            WalkConfig(0)
        with pytest.raises(ValueError):
            WalkConfig(5, samples=0)
        with pytest.raises(ValueError):
            WalkConfig(5, t_cap=2e4)


class TestWalkMoments:
    def test_reproducible(self):
        cfg = WalkConfig(8, samples=1500, seed=99)
        assert walk.walk_moments(cfg) == walk.walk_moments(cfg)

    def test_coupling(self):
        cfg = WalkConfig(4, samples=1200, seed=5)
        s_n, s_n2 = walk._walk_positions(cfg)
        # the same first-n steps, block by block, give S_n; S_{n+2} adds two more
        child = np.random.SeedSequence(5).spawn(2)[1]
        steps = walk.sample_cauchy_array(np.random.default_rng(child), (200, 6))
        assert np.array_equal(s_n[1000:], steps[:, :4].sum(axis=1))
        assert np.array_equal(s_n2[1000:], steps[:, :4].sum(axis=1) + steps[:, 4] + steps[:, 5])

    def test_second_moment_band(self):
        rep = walk.walk_moments(WalkConfig(8, samples=3000))
        assert 0.3 <= rep.second_moment / math.log(8) <= 3.0
        assert rep.reliable

    def test_clipping_grows_with_n(self):
        small = walk.walk_moments(WalkConfig(8, samples=4000, t_cap=200.0))
        large = walk.walk_moments(WalkConfig(32, samples=4000, t_cap=200.0))
        assert small.clipped_fraction < large.clipped_fraction
        # roughly (2/π)·n/t_cap beyond the cap
        assert large.clipped_fraction == pytest.approx(2 / math.pi * 34 / 200, rel=0.35)

    def test_unreliable_flag(self):
        rep = walk.walk_moments(WalkConfig(40, samples=1000, t_cap=50.0))
        assert rep.clipped_fraction > walk.UNRELIABLE_CLIP_FRACTION
        assert not rep.reliable


class TestMeanZeta:
    def test_expected_value(self):
        n = 10
        ref = float(mpmath.zeta(10.5)) - 80 / 399
        assert walk.expected_mean_zeta(n) == pytest.approx(ref, rel=1e-13)
        assert abs(walk.expected_mean_zeta(n) - 0.8005) < 5e-4

    def test_monte_carlo_mean(self):
        rep = walk.walk_moments(WalkConfig(10, samples=10_000))
        assert abs(rep.mean_zeta.real - walk.expected_mean_zeta(10)) <= 3 * rep.mean_zeta_se

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            walk.expected_mean_zeta(0)
