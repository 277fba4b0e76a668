"""Farey fractions F_n on (0, 1] and the sums F_n(f), F_{n,σ}(f), E_n(f)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .arith import SieveTables, divisors, mertens, totient_summatory, weighted_mobius_prefix
from .funclib import PeriodicFunction
from .riemann import finite_coefficients, riemann_partial_sums

# Target number of (κ, λ) pairs per denominator band.
_BAND_PAIRS = 2_000_000


@dataclass(frozen=True, order=False)
class FareyFraction:
    num: int
    den: int

    def __post_init__(self) -> None:
        if not 1 <= self.num <= self.den:
            raise ValueError(f"need 1 ≤ num ≤ den, got {self.num}/{self.den}")
        if math.gcd(self.num, self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not reduced")

    @property
    def value(self) -> float:
        return self.num / self.den

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def farey_sequence(n: int) -> Iterator[FareyFraction]:
    """Yield F_n in increasing order, from 1/n up to 1/1, in constant memory."""
    if n < 1:
        raise ValueError("n must be positive")
    a, b, c, d = 0, 1, 1, n
    while c <= n:
        yield FareyFraction(c, d)
        if c == d:
            return
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b


def _denominator_bands(n: int) -> Iterator[tuple[int, int]]:
    lo = 1
    while lo <= n:
        hi = lo
        total = lo
        while hi < n and total + hi + 1 <= _BAND_PAIRS:
            hi += 1
            total += hi
        yield lo, hi
        lo = hi + 1


def _band_terms(f: PeriodicFunction, lo: int, hi: int, sigma: float) -> np.ndarray:
    dens = np.arange(lo, hi + 1, dtype=np.int64)
    lam = np.repeat(dens, dens)
    starts = np.concatenate(([0], np.cumsum(dens)[:-1]))
    kap = np.arange(lam.size, dtype=np.int64) - np.repeat(starts, dens) + 1
    keep = np.gcd(kap, lam) == 1
    kap, lam = kap[keep], lam[keep]
    vals = f.at_ratio(kap, lam)
    if sigma != 0:
        vals = vals * np.exp(-sigma * (np.log(kap) + np.log(lam)))
    return vals


def weighted_farey_sum(f: PeriodicFunction, n: int, sigma: float) -> float:
    """F_{n,σ}(f) = Σ_{κ/λ ∈ F_n} f(κ/λ)/(κλ)^σ by direct enumeration.

    Each denominator band is summed with ``math.fsum``; the band partials are
    merged the same way, so the result is the correctly rounded sum and does
    not depend on how bands are split.
    """
    if n < 1:
        raise ValueError("n must be positive")
    parts: list[float] = []
    for lo, hi in _denominator_bands(n):
        parts.append(math.fsum(_band_terms(f, lo, hi, sigma)))
    return math.fsum(parts)


def weighted_farey_sums_upto(f: PeriodicFunction, N: int, sigma: float) -> np.ndarray:
    """F[n] = F_{n,σ}(f) for n = 0..N, from per-denominator partial sums.

    F_n grows from F_{n-1} by the fractions with denominator exactly n.
    """
    if N < 1:
        raise ValueError("N must be positive")
    per_den = np.zeros(N + 1)
    for lo, hi in _denominator_bands(N):
        dens = np.arange(lo, hi + 1, dtype=np.int64)
        lam = np.repeat(dens, dens)
        starts = np.concatenate(([0], np.cumsum(dens)[:-1]))
        kap = np.arange(lam.size, dtype=np.int64) - np.repeat(starts, dens) + 1
        keep = np.gcd(kap, lam) == 1
        vals = np.where(keep, f.at_ratio(kap, lam), 0.0)
        if sigma != 0:
            vals = vals * np.exp(-sigma * (np.log(kap) + np.log(lam)))
        per_den[lo : hi + 1] = [math.fsum(vals[a : a + d]) for a, d in zip(starts, dens)]
    out = np.zeros(N + 1)
    out[1:] = np.cumsum(per_den[1:])
    return out


def farey_sum(f: PeriodicFunction, n: int) -> float:
    """F_n(f) = Σ_{κ/λ ∈ F_n} f(κ/λ)."""
    return weighted_farey_sum(f, n, 0.0)


def farey_sum_via_convolution(f: PeriodicFunction, n: int, sigma: float, tables: SieveTables) -> float:
    """F_{n,σ}(f) as Σ_{d≤n} D_{f_σ}(d)·d^{-2σ}·Σ_{λ≤n/d} μ(λ)λ^{-2σ}."""
    if n < 1:
        raise ValueError("n must be positive")
    tables.check_range(n)
    D = riemann_partial_sums(f, n, sigma)
    m = weighted_mobius_prefix(tables, 2.0 * sigma, n)
    d = np.arange(1, n + 1, dtype=np.int64)
    return math.fsum(D[1:] * d.astype(float) ** (-2.0 * sigma) * m[n // d])


def farey_sums_via_convolution_upto(
    f: PeriodicFunction, N: int, sigma: float, tables: SieveTables
) -> np.ndarray:
    """F[n] from the convolution path for every n ≤ N, sharing one D_{f_σ} table."""
    if N < 1:
        raise ValueError("N must be positive")
    tables.check_range(N)
    D = riemann_partial_sums(f, N, sigma)
    m = weighted_mobius_prefix(tables, 2.0 * sigma, N)
    d = np.arange(1, N + 1, dtype=np.int64)
    w = D[1:] * d.astype(float) ** (-2.0 * sigma)
    out = np.zeros(N + 1)
    for n in range(1, N + 1):
        out[n] = math.fsum(w[:n] * m[n // d[:n]])
    return out


def farey_error_term(f: PeriodicFunction, n: int, tables: SieveTables) -> float:
    """E_n(f) = F_n(f) − Φ(n)·∫_0^1 f."""
    if f.exact_integral is None:
        raise ValueError(f"{f.name} has no exact integral")
    return farey_sum(f, n) - totient_summatory(tables, n) * f.exact_integral


def farey_error_fourier_formula(
    coeffs: Mapping[int, complex], f1: float, n: int, tables: SieveTables
) -> float:
    """(f(1) − Σ_ℓ c(ℓ)) + Σ_{ℓ≠0} c(ℓ)·Σ_{d|ℓ, d≤n} d·M(n/d) for a trig polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    tables.check_range(n)
    c = finite_coefficients(coeffs)
    total = complex(f1) - sum(c.values())
    for nu, v in c.items():
        if nu == 0:
            continue
        total += v * sum(d * mertens(tables, n // d) for d in divisors(abs(nu)) if d <= n)
    return total.real
