"""Sieved multiplicative functions and Möbius/totient summatory quantities.

Every table is 1-indexed: slot 0 is padding so that ``mu[n]`` is μ(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Block length for the compensated prefix sums: plain float cumsum inside a
# block, exact fsum carried between blocks.
_PREFIX_BLOCK = 1024


@dataclass(frozen=True)
class SieveTables:
    """Immutable μ, φ, smallest-prime-factor and Mertens tables up to ``limit``."""

    limit: int
    mu: np.ndarray
    phi: np.ndarray
    spf: np.ndarray
    mertens: np.ndarray
    totient_prefix: np.ndarray

    def check_range(self, n: int) -> None:
        if n > self.limit:
            raise ValueError(f"argument {n} exceeds sieve limit {self.limit}")


def _primes_upto(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def build_sieve(N: int) -> SieveTables:
    """Sieve μ, φ and the smallest prime factor for 1..N.

    Each prime p touches only its multiples, so the total work is
    N·Σ1/p = O(N log log N) numpy slice operations.
    """
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ValueError("sieve limit must be a positive integer")
    N = int(N)
    primes = _primes_upto(N)

    spf = np.zeros(N + 1, dtype=np.int64)
    for p in primes[primes <= math.isqrt(N)]:
        block = spf[p * p :: p]
        block[block == 0] = p
    idx = np.arange(N + 1, dtype=np.int64)
    unset = spf == 0
    spf[unset] = idx[unset]
    spf[0] = 0
    spf[1] = 1

    mu = np.ones(N + 1, dtype=np.int64)
    mu[0] = 0
    phi = idx.copy()
    for p in primes:
        p = int(p)
        mu[p::p] *= -1
        if p * p <= N:
            mu[p * p :: p * p] = 0
        phi[p::p] -= phi[p::p] // p

    mertens = np.cumsum(mu)
    totient_prefix = np.cumsum(phi)
    for arr in (mu, phi, spf, mertens, totient_prefix):
        arr.setflags(write=False)
    return SieveTables(N, mu, phi, spf, mertens, totient_prefix)


@lru_cache(maxsize=8)
def cached_sieve(N: int) -> SieveTables:
    """Shared sieve instance; tables are read-only so sharing is safe."""
    return build_sieve(N)


def _floor_arg(tables: SieveTables, x: float) -> int:
    if x < 1:
        return 0
    n = int(math.floor(x))
    tables.check_range(n)
    return n


def mertens(tables: SieveTables, x: float) -> int:
    """M(x) = Σ_{λ≤x} μ(λ); zero for x < 1."""
    n = _floor_arg(tables, x)
    return int(tables.mertens[n])


def weighted_mobius_sum(tables: SieveTables, x: float, tau: float) -> float:
    """Σ_{λ≤x} μ(λ)/λ^tau with compensated summation."""
    n = _floor_arg(tables, x)
    if n == 0:
        return 0.0
    lam = np.arange(1, n + 1, dtype=np.float64)
    mu = tables.mu[1 : n + 1]
    nz = mu != 0
    return math.fsum(mu[nz] * lam[nz] ** (-tau))


def _compensated_prefix(terms: np.ndarray) -> np.ndarray:
    out = np.empty_like(terms)
    carry = 0.0
    for start in range(0, terms.size, _PREFIX_BLOCK):
        chunk = terms[start : start + _PREFIX_BLOCK]
        out[start : start + chunk.size] = carry + np.cumsum(chunk)
        carry = math.fsum((carry, math.fsum(chunk)))
    return out


def weighted_mobius_prefix(tables: SieveTables, tau: float, upto: int | None = None) -> np.ndarray:
    """Table m with m[x] = Σ_{λ≤x} μ(λ)/λ^tau for 0 ≤ x ≤ upto (m[0] = 0)."""
    top = tables.limit if upto is None else int(upto)
    tables.check_range(top)
    lam = np.arange(1, top + 1, dtype=np.float64)
    terms = tables.mu[1 : top + 1] * lam ** (-tau)
    out = np.zeros(top + 1)
    out[1:] = _compensated_prefix(terms)
    return out


def totient_summatory(tables: SieveTables, n: int) -> int:
    """Φ(n) = Σ_{d≤n} φ(d), the size of the Farey sequence of order n."""
    if n < 1:
        raise ValueError("n must be positive")
    tables.check_range(n)
    return int(tables.totient_prefix[n])


def mertens_divisor_identity(tables: SieveTables, n: int) -> int:
    """Σ_{d≤n} M(⌊n/d⌋) in integer arithmetic (equal to 1 for every n ≥ 1).

    Small d are summed directly; for d > √n the quotient q = ⌊n/d⌋ is small and
    each M(q) is weighted by the number of d sharing it.
    """
    tables.check_range(n)
    M = tables.mertens
    r = math.isqrt(n)
    d = np.arange(1, r + 1, dtype=np.int64)
    total = int(M[n // d].sum())
    qmax = n // (r + 1)
    if qmax >= 1:
        q = np.arange(1, qmax + 1, dtype=np.int64)
        count = n // q - np.maximum(n // (q + 1), r)
        total += int((M[q] * np.maximum(count, 0)).sum())
    return total


def rubel_sums(tables: SieveTables, n_max: int) -> np.ndarray:
    """R[n] = Σ_{d≤n} (1/d)·|Σ_{λ≤n/d} μ(λ)/λ| for every n ≤ n_max.

    Moving from n−1 to n changes only the terms with d | n, so the whole table
    costs O(n_max log n_max).
    """
    tables.check_range(n_max)
    m = np.abs(weighted_mobius_prefix(tables, 1.0, n_max))
    delta = np.zeros(n_max + 1)
    for dd in range(1, n_max + 1):
        q = np.arange(1, n_max // dd + 1)
        delta[q * dd] += (m[q] - m[q - 1]) / dd
    return np.cumsum(delta)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def divisor_power_sum(n: int, s: float) -> float:
    """σ_s(n) = Σ_{d|n} d^s; s = 0 gives the divisor count."""
    if n < 1:
        raise ValueError("n must be positive")
    if s == 0:
        return float(len(divisors(n)))
    return math.fsum(float(d) ** s for d in divisors(n))


def jordan_totient(n: int, s: float) -> float:
    """J_s(n) = Σ_{d|n} d^s μ(n/d)."""
    if n < 1:
        raise ValueError("n must be positive")
    return math.fsum(float(d) ** s * mobius(n // d) for d in divisors(n))
