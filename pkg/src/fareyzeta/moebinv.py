"""Möbius inversion over the multiplicative grid m ↦ {km : k ≥ 1}.

For g on the positive integers, f(m) = Σ_n μ(n) g(nm) inverts
g(m) = Σ_k f(km) whenever Σ_ν d(ν)|g(ν)| < ∞.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Optional, Union

from .arith import divisors, mobius

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class PowerMajorant:
    """|g(n)| ≤ constant·n^{-exponent} for n beyond the stored support."""

    constant: float
    exponent: float


@dataclass(frozen=True)
class GridSequence:
    """A sequence on 1..support_bound, zero beyond unless ``majorant`` says otherwise.

    ``majorant`` marks a decaying sequence whose stored values are a truncation.
    """

    values: Mapping[int, Number]
    support_bound: int
    majorant: Optional[PowerMajorant] = None

    def __post_init__(self) -> None:
        if self.support_bound < 1:
            raise ValueError("support_bound must be positive")
        for k in self.values:
            if not 1 <= int(k) <= self.support_bound:
                raise ValueError(f"index {k} outside 1..{self.support_bound}")

    def __getitem__(self, m: int) -> Number:
        return self.values.get(m, 0)

    @property
    def is_rational(self) -> bool:
        return all(isinstance(v, Rational) for v in self.values.values())

    def dense(self) -> list[Number]:
        """Values at 1..support_bound as a list (index 0 is m = 1)."""
        return [self[m] for m in range(1, self.support_bound + 1)]


def _sum(terms: list, exact: bool) -> Number:
    if exact:
        return sum(terms, Fraction(0))
    return math.fsum(float(t) for t in terms)


def check_inversion_condition(g: GridSequence) -> float:
    """Σ_ν d(ν)|g(ν)| over the support, plus a tail estimate for decaying g.

    With a majorant C·n^{-p} the tail Σ_{n>B} d(n)C n^{-p} is estimated from the
    mean value log x + 2γ of the divisor function; p ≤ 1 gives infinity.
    """
    from .zeta import EULER_GAMMA

    head = math.fsum(len(divisors(k)) * abs(float(v)) for k, v in g.values.items() if v != 0)
    if g.majorant is None:
        return head
    p, c = g.majorant.exponent, g.majorant.constant
    if p <= 1:
        return math.inf
    B = float(g.support_bound)
    tail = c * B ** (1.0 - p) * (math.log(B) / (p - 1.0) + 1.0 / (p - 1.0) ** 2 + 2.0 * EULER_GAMMA / (p - 1.0))
    return head + tail


def mobius_invert(g: GridSequence) -> GridSequence:
    """f(m) = Σ_{n ≤ B/m} μ(n)·g(nm) for m ≤ B = g.support_bound.

    Exact rational arithmetic when every value of ``g`` is rational.
    """
    if not math.isfinite(check_inversion_condition(g)):
        raise ValueError("Σ d(ν)|g(ν)| diverges; the inversion is not licensed")
    B = g.support_bound
    exact = g.is_rational
    mu = [0] + [mobius(n) for n in range(1, B + 1)]
    out: dict[int, Number] = {}
    for m in range(1, B + 1):
        terms = [mu[n] * g[n * m] for n in range(1, B // m + 1) if mu[n] and g[n * m]]
        if terms:
            val = _sum(terms, exact)
            if val != 0:
                out[m] = val
    return GridSequence(out, B, g.majorant)


def multiple_sum(f: GridSequence) -> GridSequence:
    """g(m) = Σ_{k ≤ B/m} f(km), the map that ``mobius_invert`` undoes."""
    B = f.support_bound
    exact = f.is_rational
    out: dict[int, Number] = {}
    for m in range(1, B + 1):
        terms = [f[k * m] for k in range(1, B // m + 1) if f[k * m]]
        if terms:
            val = _sum(terms, exact)
            if val != 0:
                out[m] = val
    return GridSequence(out, B, f.majorant)
