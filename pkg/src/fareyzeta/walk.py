"""Second moments of ζ(1/2 + iS_n) along a Cauchy random walk S_n = X_1 + … + X_n."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .zeta import ZetaEvaluator, zeta_points

# Samples per independently seeded block; fixed so results do not depend on workers.
BLOCK_SIZE = 1000
UNRELIABLE_CLIP_FRACTION = 0.2


@dataclass(frozen=True)
class WalkConfig:
    n: int
    samples: int = 10_000
    seed: int = 12345
    t_cap: float = 5000.0
    ev: ZetaEvaluator = field(default_factory=ZetaEvaluator)

    def __post_init__(self) -> None:
        if self.n < 1 or self.samples < 1:
            raise ValueError("n and samples must be positive")
        if not 0 < self.t_cap <= self.ev.ceiling:
            raise ValueError("t_cap must lie in (0, desk ceiling]")


def _open_uniform(rng: np.random.Generator, size) -> np.ndarray:
    # random() returns k/2^53 with k < 2^53; the half-step shift keeps U off 0.
    return rng.random(size) + 2.0**-54


def sample_cauchy(rng: np.random.Generator) -> float:
    """One standard Cauchy draw tan(π(U − 1/2))."""
    return float(math.tan(math.pi * (float(_open_uniform(rng, None)) - 0.5)))


def sample_cauchy_array(rng: np.random.Generator, size) -> np.ndarray:
    """Array of standard Cauchy draws, same transform as ``sample_cauchy``."""
    return np.tan(np.pi * (_open_uniform(rng, size) - 0.5))


@dataclass(frozen=True)
class WalkReport:
    n: int
    samples: int
    kept: int
    second_moment: float
    second_moment_se: float
    increment_moment: float
    increment_se: float
    mean_zeta: complex
    mean_zeta_se: float
    clipped_fraction: float

    @property
    def reliable(self) -> bool:
        return self.clipped_fraction <= UNRELIABLE_CLIP_FRACTION


def _walk_positions(cfg: WalkConfig) -> tuple[np.ndarray, np.ndarray]:
    """Coupled (S_n, S_{n+2}) per sample: the second extends the first by two steps."""
    blocks = -(-cfg.samples // BLOCK_SIZE)
    children = np.random.SeedSequence(cfg.seed).spawn(blocks)
    s_n, s_n2 = [], []
    for b, child in enumerate(children):
        size = min(BLOCK_SIZE, cfg.samples - b * BLOCK_SIZE)
        steps = sample_cauchy_array(np.random.default_rng(child), (size, cfg.n + 2))
        head = steps[:, : cfg.n].sum(axis=1)
        s_n.append(head)
        s_n2.append(head + steps[:, cfg.n] + steps[:, cfg.n + 1])
    return np.concatenate(s_n), np.concatenate(s_n2)


def _mean_se(x: np.ndarray) -> tuple[float, float]:
    if x.size < 2:
        return float(x.mean()) if x.size else math.nan, math.nan
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size))


def walk_moments(cfg: WalkConfig) -> WalkReport:
    """Monte Carlo E|ζ(1/2+iS_n)|², E|ζ(1/2+iS_{n+2}) − ζ(1/2+iS_n)|² and E ζ(1/2+iS_n).

    Samples with |S_n| or |S_{n+2}| above ``t_cap`` are dropped and counted in
    ``clipped_fraction``; above 20 % the report is marked unreliable.
    """
    s_n, s_n2 = _walk_positions(cfg)
    keep = (np.abs(s_n) <= cfg.t_cap) & (np.abs(s_n2) <= cfg.t_cap)
    z_n = zeta_points(cfg.ev, 0.5, s_n[keep])
    z_n2 = zeta_points(cfg.ev, 0.5, s_n2[keep])
    sq = z_n.real**2 + z_n.imag**2
    diff = z_n2 - z_n
    inc = diff.real**2 + diff.imag**2
    m2, m2_se = _mean_se(sq)
    mi, mi_se = _mean_se(inc)
    re, re_se = _mean_se(z_n.real)
    im, im_se = _mean_se(z_n.imag)
    return WalkReport(
        n=cfg.n,
        samples=cfg.samples,
        kept=int(keep.sum()),
        second_moment=m2,
        second_moment_se=m2_se,
        increment_moment=mi,
        increment_se=mi_se,
        mean_zeta=complex(re, im),
        mean_zeta_se=math.hypot(re_se, im_se),
        clipped_fraction=1.0 - float(keep.mean()),
    )


def expected_mean_zeta(n: int) -> float:
    """E ζ(1/2+iS_n) = ζ(1/2+n) − 8n/(4n²−1), the continuation of Σ k^{-1/2-n}."""
    from .zeta import zeta_real

    if n < 1:
        raise ValueError("n must be positive")
    return zeta_real(0.5 + n) - 8.0 * n / (4.0 * n * n - 1.0)
