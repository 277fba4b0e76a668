"""Riemann sums D_f, R_f and quadratic Riemann sums S_{n,σ}(f)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .arith import _compensated_prefix, divisors
from .funclib import PeriodicFunction

# Elements per vectorised band of the ℓ-sweep.
_BAND_ELEMENTS = 4_000_000


def riemann_partial_sums(f: PeriodicFunction, n: int, sigma: float) -> np.ndarray:
    """D[ℓ] = Σ_{k=1}^{ℓ} f(k/ℓ)(k/ℓ)^{-σ} for ℓ = 0..n (D[0] = 0).

    Works through ℓ in bands so that each band is one vectorised evaluation.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out = np.zeros(n + 1)
    lo = 1
    while lo <= n:
        # largest hi with Σ_{ℓ=lo}^{hi} ℓ under the band budget
        hi = lo
        total = lo
        while hi < n and total + hi + 1 <= _BAND_ELEMENTS:
            hi += 1
            total += hi
        ells = np.arange(lo, hi + 1, dtype=np.int64)
        ell_rep = np.repeat(ells, ells)
        starts = np.concatenate(([0], np.cumsum(ells)[:-1]))
        k = np.arange(ell_rep.size, dtype=np.int64) - np.repeat(starts, ells) + 1
        vals = f.at_ratio(k, ell_rep)
        if sigma != 0:
            vals = vals * np.exp(-sigma * np.log1p((k - ell_rep) / ell_rep.astype(float)))
        out[lo : hi + 1] = np.add.reduceat(vals, starts)
        lo = hi + 1
    return out


def riemann_partial_sum(f: PeriodicFunction, ell: int, sigma: float) -> float:
    """D_{f_σ}(ℓ) = Σ_{k=1}^{ℓ} f(k/ℓ)·(k/ℓ)^{-σ}."""
    if ell < 1:
        raise ValueError("ell must be positive")
    k = np.arange(1, ell + 1, dtype=np.int64)
    ell_arr = np.full(ell, ell, dtype=np.int64)
    vals = f.at_ratio(k, ell_arr)
    if sigma != 0:
        vals = vals * np.exp(-sigma * np.log1p((k - ell_arr) / float(ell)))
    return math.fsum(vals)


def riemann_mean(f: PeriodicFunction, ell: int, sigma: float) -> float:
    """R_{f_σ}(ℓ) = D_{f_σ}(ℓ)/ℓ."""
    return riemann_partial_sum(f, ell, sigma) / ell


def epsilon(nu: int, d: int) -> int:
    """ε_ν(d) = d − 1 if d | ν else −1 (every d divides ν = 0)."""
    return d - 1 if nu % d == 0 else -1


def finite_coefficients(coeffs: Mapping[int, complex]) -> dict[int, complex]:
    if not isinstance(coeffs, Mapping):
        raise TypeError("coefficients must be a finite mapping")
    return {int(k): complex(v) for k, v in coeffs.items()}


def fourier_riemann_sum(coeffs: Mapping[int, complex], f1: float, d: int) -> float:
    """f(1) + Σ_ν c(ν)·ε_ν(d), which equals D_f(d) for a trigonometric polynomial."""
    if d < 1:
        raise ValueError("d must be positive")
    c = finite_coefficients(coeffs)
    total = complex(f1) + sum(v * epsilon(nu, d) for nu, v in c.items())
    return total.real


def quadratic_riemann_sums(f: PeriodicFunction, n: int, sigma: float) -> np.ndarray:
    """S[m] = S_{m,σ}(f) for m = 0..n, via S_m = Σ_{ℓ≤m} ℓ^{1−2σ} R_{f_σ}(ℓ)."""
    d = riemann_partial_sums(f, n, sigma)
    ell = np.arange(1, n + 1, dtype=float)
    out = np.zeros(n + 1)
    out[1:] = _compensated_prefix(d[1:] * ell ** (-2.0 * sigma))
    return out


def quadratic_riemann_sum(f: PeriodicFunction, n: int, sigma: float) -> float:
    """S_{n,σ}(f) = Σ_{1≤k≤ℓ≤n} f(k/ℓ)/(kℓ)^σ."""
    d = riemann_partial_sums(f, n, sigma)
    ell = np.arange(1, n + 1, dtype=float)
    return math.fsum(d[1:] * ell ** (-2.0 * sigma))


def truncation_index(n: int, alpha: float) -> int:
    """⌊n^α⌋ computed without floating-point undershoot at exact powers."""
    m = int(math.floor(n**alpha))
    while (m + 1) ** (1.0 / alpha) <= n * (1 + 1e-15):
        m += 1
    while m > 0 and m ** (1.0 / alpha) > n * (1 + 1e-15):
        m -= 1
    return m


def quadratic_riemann_sum_truncated(f: PeriodicFunction, n: int, sigma: float, alpha: float) -> float:
    """S_{n,σ,α}(f): the quadratic Riemann sum restricted to ℓ ≤ n^α."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    m = truncation_index(n, alpha)
    if m < 1:
        return 0.0
    return quadratic_riemann_sum(f, m, sigma)


def _power_sums(n: int, sigma: float) -> tuple[float, float, float]:
    ell = np.arange(1, n + 1, dtype=float)
    w = ell ** (-2.0 * sigma)
    return math.fsum(w), math.fsum(ell * w), math.fsum((ell - 1) * w)


def fourier_expansion_S(
    coeffs: Mapping[int, complex], n: int, sigma: float, f1: float = 0.0
) -> float:
    """Finite Fourier form of S_{n,σ} in terms of the coefficients of f_σ.

    Returns f1·Σℓ^{-2σ} + c(0)·Σ(ℓ−1)ℓ^{-2σ} + Σ_{ν≠0} c(ν)·Σ_{ℓ≤n} ℓ^{-2σ} ε_ν(ℓ).
    The first term is the k = ℓ node f_σ(1) of every inner sum; with the
    default f1 = 0 the expression is the bare coefficient expansion.
    """
    if n < 1:
        raise ValueError("n must be positive")
    c = finite_coefficients(coeffs)
    h, _, hm1 = _power_sums(n, sigma)
    ell = np.arange(1, n + 1, dtype=np.int64)
    w = ell.astype(float) ** (-2.0 * sigma)
    total = complex(f1) * h + c.get(0, 0.0) * hm1
    for nu, v in c.items():
        if nu == 0:
            continue
        eps = np.where(nu % ell == 0, ell - 1, -1)
        total += v * math.fsum(w * eps)
    return total.real


def fourier_expansion_S_divisor_form(
    coeffs: Mapping[int, complex], n: int, sigma: float, f1: float = 0.0
) -> float:
    """Divisor form: f1·H + c(0)·Σℓ^{1−2σ} + Σ_{ν≠0} c(ν)Σ_{ℓ≤n, ℓ|ν} ℓ^{1−2σ} − (Σ_ν c(ν))·H.

    H = Σ_{ℓ≤n} ℓ^{-2σ}. Algebraically identical to ``fourier_expansion_S``.
    """
    c = finite_coefficients(coeffs)
    h, p, _ = _power_sums(n, sigma)
    total = complex(f1) * h + c.get(0, 0.0) * p - sum(c.values()) * h
    for nu, v in c.items():
        if nu == 0:
            continue
        total += v * math.fsum(float(d) ** (1.0 - 2.0 * sigma) for d in divisors(abs(nu)) if d <= n)
    return total.real


@dataclass(frozen=True)
class PowerSumEstimate:
    m: int
    sigma: float
    exact: float
    main_term: float
    constant_term: float
    residual: float


def power_sum_partial(m: int, sigma: float) -> PowerSumEstimate:
    """Σ_{ℓ≤m} ℓ^{1−2σ} against its main and constant terms, 0 ≤ σ ≤ 1."""
    from .zeta import EULER_GAMMA, zeta_real

    if m < 1:
        raise ValueError("m must be positive")
    if not 0 <= sigma <= 1:
        raise ValueError("sigma must lie in [0, 1]")
    ell = np.arange(1, m + 1, dtype=float)
    if sigma == 0:
        exact = float(m * (m + 1) // 2)
        main, const = exact, 0.0
    else:
        exact = math.fsum(ell ** (1.0 - 2.0 * sigma))
        if sigma == 0.5:
            main, const = float(m), 0.0
        elif sigma == 1:
            main, const = math.log(m), EULER_GAMMA
        else:
            main = m ** (2.0 * (1.0 - sigma)) / (2.0 * (1.0 - sigma))
            const = zeta_real(2.0 * sigma - 1.0) if sigma > 0.5 else 0.0
    return PowerSumEstimate(m, sigma, exact, main, const, exact - main - const)


def varpi_partial_sums(f: PeriodicFunction, sigma: float, N: int) -> np.ndarray:
    """Running sums Σ_{n≤m} |Θ_{n,σ}(f)|/n² for m = 1..N.

    Θ_{n,σ}(f) = S_{n,σ}(f) − (∫f_σ)·Σ_{ℓ≤n} ℓ^{1−2σ}.
    """
    if f.exact_weighted_integral is None:
        raise ValueError(f"{f.name} has no exact weighted integral")
    integral = f.exact_weighted_integral(sigma)
    s = quadratic_riemann_sums(f, N, sigma)
    ell = np.arange(1, N + 1, dtype=float)
    theta = s[1:] - integral * _compensated_prefix(ell ** (1.0 - 2.0 * sigma))
    return _compensated_prefix(np.abs(theta) / ell**2)


def varpi_error_accumulation(f: PeriodicFunction, sigma: float, N: int) -> float:
    """Σ_{n≤N} |Θ_{n,σ}(f)|/n²; see ``varpi_partial_sums`` for the running values."""
    return float(varpi_partial_sums(f, sigma, N)[-1])
