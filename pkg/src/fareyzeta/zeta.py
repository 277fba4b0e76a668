"""Riemann zeta evaluation, mean-square integrals and the Parseval constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Literal, Optional

import numpy as np

from .quad import (
    GK_NODES,
    QuadratureResult,
    cauchy_tail,
    gk_nodes,
    integrate_panels,
    integrate_panels_detailed,
)

# Euler-Mascheroni constant, 20 significant digits (OEIS A001620).
EULER_GAMMA = 0.57721566490153286061
# log(2π), 20 significant digits (OEIS A061444).
LOG_2PI = 1.8378770664093454836
# ζ(2) = π²/6.
ZETA2 = math.pi**2 / 6.0

DESK_CEILING = 1.0e4
# Cap on the size of one (points x terms) block of the Dirichlet sum.
_BLOCK_ELEMENTS = 2_000_000


@lru_cache(maxsize=None)
def bernoulli_even(count: int) -> tuple[Fraction, ...]:
    """B_2, B_4, ..., B_{2·count} as exact fractions (Akiyama-Tanigawa)."""
    m_max = 2 * count
    out: list[Fraction] = []
    a = [Fraction(0)] * (m_max + 1)
    for m in range(m_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if m >= 2 and m % 2 == 0:
            out.append(a[0])
    return tuple(out)


@lru_cache(maxsize=None)
def _em_coefficients(order: int) -> np.ndarray:
    """B_{2j}/(2j)! for j = 1..order+1 (the last one feeds the remainder bound)."""
    bs = bernoulli_even(order + 1)
    return np.array([float(b / math.factorial(2 * (j + 1))) for j, b in enumerate(bs)])


def _borwein_d(n: int) -> list[float]:
    d = []
    acc = 0.0
    for i in range(n + 1):
        acc += n * math.factorial(n + i - 1) * 4.0**i / (math.factorial(n - i) * math.factorial(2 * i))
        d.append(acc)
    return d


def zeta_real(s: float, tol: float = 1e-14) -> float:
    """ζ(s) for real s > 0, s ≠ 1, from the accelerated alternating eta series.

    Borwein's weights make the error of an n-term sum about
    3/(3+√8)^n relative to η(s); dividing by 1 − 2^{1−s} recovers ζ.
    """
    if s == 1:
        raise ValueError("zeta has a pole at s = 1")
    if s <= 0:
        raise ValueError("zeta_real is implemented for s > 0 only")
    if s > 60:
        return 1.0 + 2.0**-s + 3.0**-s
    n = min(60, max(10, int(math.ceil(math.log(3.0 / tol) / math.log(3.0 + math.sqrt(8.0)))) + 2))
    d = _borwein_d(n)
    terms = [(-1) ** k * (d[k] - d[n]) / (k + 1) ** s for k in range(n)]
    eta = -math.fsum(terms) / d[n]
    return eta / (1.0 - 2.0 ** (1.0 - s))


@dataclass(frozen=True)
class ZetaEvaluator:
    """Configured evaluator for ζ(σ+it).

    ``euler_maclaurin`` truncates the Dirichlet series at N terms, adds
    N^{1-s}/(s-1) + N^{-s}/2 and ``em_correction_order`` Bernoulli corrections,
    with N picked per point so that the remainder bound meets
    ``target_accuracy``. ``approx_fe`` is the plain approximate functional
    equation Σ_{k≤x} k^{-s} − x^{1-s}/(1-s) with x = afe_x_factor·max(|t|,1);
    its error is only O(x^{-σ}) and is reported, not reduced.
    """

    method: Literal["euler_maclaurin", "approx_fe"] = "euler_maclaurin"
    target_accuracy: float = 1e-10
    em_correction_order: int = 12
    afe_x_factor: float = 2.0
    ceiling: float = DESK_CEILING

    def __post_init__(self) -> None:
        if self.method not in ("euler_maclaurin", "approx_fe"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.target_accuracy <= 0 or self.afe_x_factor <= 0 or self.em_correction_order < 1:
            raise ValueError("invalid evaluator configuration")

    def __call__(self, sigma, t) -> np.ndarray:
        return zeta_points(self, sigma, t)


def _blocks(n_sorted: np.ndarray):
    """Consecutive (start, stop) runs whose padded size rows·max(n) fits the budget."""
    total = n_sorted.size
    start = 0
    while start < total:
        stop = min(total, start + max(1, _BLOCK_ELEMENTS // max(1, int(n_sorted[start]))))
        while stop - start > 1 and (stop - start) * int(n_sorted[stop - 1]) > _BLOCK_ELEMENTS:
            stop = start + max(1, _BLOCK_ELEMENTS // max(1, int(n_sorted[stop - 1])))
        yield start, stop
        start = stop


def _dirichlet_partial(sigma: np.ndarray, t: np.ndarray, n_terms: np.ndarray) -> np.ndarray:
    """Σ_{k≤n_terms[i]} k^{-(σ_i+it_i)} for each point, blocked by term count."""
    out = np.zeros(t.size, dtype=complex)
    order = np.argsort(n_terms, kind="stable")
    for start, stop in _blocks(n_terms[order]):
        idx = order[start:stop]
        kmax = int(n_terms[idx].max())
        if kmax > 0:
            logk = np.log(np.arange(1, kmax + 1, dtype=float))
            s = sigma[idx] + 1j * t[idx]
            terms = np.exp(-np.outer(s, logk))
            if n_terms[idx].min() < kmax:
                terms *= np.arange(1, kmax + 1)[None, :] <= n_terms[idx][:, None]
            out[idx] = terms.sum(axis=1)
    return out


def _em_tail(s: np.ndarray, n: np.ndarray, order: int):
    """N^{1-s}/(s-1) + N^{-s}/2 + Σ_j T_j and the remainder bound."""
    coef = _em_coefficients(order)
    nf = n.astype(float)
    logn = np.log(nf)
    n_pow = np.exp(-s * logn)  # N^{-s}
    tail = nf * n_pow / (s - 1.0) + 0.5 * n_pow
    rising = s.copy()  # s(s+1)...(s+2j-2)
    power = n_pow / nf  # N^{-s-2j+1}
    for j in range(1, order + 2):
        term = coef[j - 1] * rising * power
        if j == order + 1:
            sig = s.real
            bound = np.abs(s + 2 * order + 1) / (sig + 2 * order + 1) * np.abs(term)
            return tail, bound
        tail = tail + term
        rising = rising * (s + 2 * j - 1) * (s + 2 * j)
        power = power / (nf * nf)
    raise AssertionError("unreachable")


def _choose_terms(ev: ZetaEvaluator, s: np.ndarray) -> np.ndarray:
    p = ev.em_correction_order
    n = np.maximum(5, np.ceil((np.abs(s) + 2 * p) / (2 * math.pi * 0.5))).astype(np.int64)
    for _ in range(60):
        _, bound = _em_tail(s, n, p)
        bad = bound > ev.target_accuracy
        if not bad.any():
            return n
        n = np.where(bad, np.ceil(n * 1.25).astype(np.int64), n)
    raise RuntimeError("Euler-Maclaurin term selection did not converge")


def _check_domain(ev: ZetaEvaluator, sigma: np.ndarray, t: np.ndarray) -> None:
    if np.any(sigma < 0.4):
        raise ValueError("zeta evaluation requires sigma >= 0.4")
    if np.any(np.abs(t) > ev.ceiling):
        raise ValueError(f"|t| exceeds the desk ceiling {ev.ceiling}")
    if np.any((sigma == 1.0) & (t == 0.0)):
        raise ValueError("zeta has a pole at s = 1")


def zeta_points(ev: ZetaEvaluator, sigma, t) -> np.ndarray:
    """Vectorised ζ(σ+it); broadcasts ``sigma`` against ``t``."""
    sigma_a, t_a = np.broadcast_arrays(np.asarray(sigma, dtype=float), np.asarray(t, dtype=float))
    shape = t_a.shape
    sig = sigma_a.ravel().copy()
    tt = t_a.ravel().copy()
    _check_domain(ev, sig, tt)
    s = sig + 1j * tt
    if ev.method == "approx_fe":
        if np.any((sig > 0.9) & (np.abs(tt) < 0.1)):
            raise ValueError("approx_fe mode rejects points near the pole")
        x = ev.afe_x_factor * np.maximum(np.abs(tt), 1.0)
        n = np.floor(x).astype(np.int64)
        head = _dirichlet_partial(sig, tt, n)
        val = head - np.exp((1.0 - s) * np.log(x)) / (1.0 - s)
        return val.reshape(shape)
    n = _choose_terms(ev, s)
    head = _dirichlet_partial(sig, tt, n - 1)
    tail, _ = _em_tail(s, n, ev.em_correction_order)
    return (head + tail).reshape(shape)


def afe_error_bound(ev: ZetaEvaluator, sigma: float, t: float) -> float:
    """Explicit bound on |approx_fe − ζ| at one point.

    With N = ⌊x⌋, the gap is the x-vs-N boundary integral, the N^{-s}/2
    Euler-Maclaurin term and the first Bernoulli correction; the last is
    doubled to absorb the remaining corrections.
    """
    x = ev.afe_x_factor * max(abs(t), 1.0)
    n = math.floor(x)
    s_abs = abs(complex(sigma, t))
    return n**-sigma * (x - n + 0.5) + s_abs * n ** (-sigma - 1) / 6.0


def zeta_point(ev: ZetaEvaluator, sigma: float, t: float) -> complex:
    """ζ(σ+it) at a single point."""
    return complex(zeta_points(ev, sigma, t))


def zeta_abs2(ev: ZetaEvaluator, sigma: float) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised t ↦ |ζ(σ+it)|²."""

    def f(t: np.ndarray) -> np.ndarray:
        z = zeta_points(ev, sigma, t)
        return z.real**2 + z.imag**2

    return f


def oscillation_width(t: float) -> float:
    """Largest initial panel width near height t: 2π/(4 log 2|t|), capped at 1/2.

    The fastest term of the Dirichlet sum at height t oscillates like
    exp(−it log(|t|/π)), so a quarter period of log 2|t| is a safe bound.
    """
    ta = max(abs(t), 2.0)
    return min(0.5, 2.0 * math.pi / (4.0 * math.log(2.0 * ta)))


def panel_edges(a: float, b: float) -> np.ndarray:
    """Partition of [a, b] aligned to the integers, each unit window split evenly.

    Panels inside one window share a width, which lets the batched evaluator
    reuse the per-width phase matrix.
    """
    if not a < b:
        raise ValueError("need a < b")
    pts = [a]
    lo = a
    while lo < b:
        hi = min(b, math.floor(lo) + 1.0)
        ref = max(abs(lo), abs(hi))
        m = max(1, math.ceil((hi - lo) / oscillation_width(ref)))
        pts.extend(np.linspace(lo, hi, m + 1)[1:].tolist())
        lo = hi
    return np.array(pts)


def _abs2_panels(ev: ZetaEvaluator, sigma: float, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """|ζ(σ+it)|² at the Kronrod nodes of each panel, shape (panels, 15).

    On a panel with midpoint m and half-width h the Dirichlet terms factor as
    k^{-σ-im}·k^{-ihx_j}; the second factor depends only on h, so the whole
    panel costs one exponential per term plus a matrix product.
    """
    nodes = gk_nodes(lo, hi)
    if ev.method != "euler_maclaurin":
        z = zeta_points(ev, sigma, nodes)
        return z.real**2 + z.imag**2
    _check_domain(ev, np.full(1, sigma), nodes.ravel())
    out = np.empty(nodes.shape)
    half_all = 0.5 * (hi - lo)
    mid_all = 0.5 * (hi + lo)
    widths, group = np.unique(half_all, return_inverse=True)
    for g, half in enumerate(widths):
        sel = np.flatnonzero(group == g)
        mid = mid_all[sel]
        n_terms = _choose_terms(ev, sigma + 1j * (np.abs(mid) + half))
        s_nodes = sigma + 1j * nodes[sel]
        tail, _ = _em_tail(s_nodes, n_terms[:, None], ev.em_correction_order)
        head = np.zeros((sel.size, 15), dtype=complex)
        order = np.argsort(n_terms, kind="stable")
        for start, stop in _blocks(n_terms[order]):
            idx = order[start:stop]
            kmax = int(n_terms[idx].max()) - 1
            if kmax > 0:
                logk = np.log(np.arange(1, kmax + 1, dtype=float))
                base = np.exp(-np.outer(sigma + 1j * mid[idx], logk))
                base *= np.arange(1, kmax + 1)[None, :] < n_terms[idx][:, None]
                phase = np.exp(-1j * half * np.outer(logk, GK_NODES))
                head[idx] = base @ phase
        z = head + tail
        out[sel] = z.real**2 + z.imag**2
    return out


def abs2_panel_function(ev: ZetaEvaluator, sigma: float) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Batched integrand (lo, hi) ↦ |ζ|² at the panel nodes, for ``integrate_panels``."""

    def f(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        return _abs2_panels(ev, sigma, lo, hi)

    return f


def zeta_sq_integral(ev: ZetaEvaluator, sigma: float, a: float, b: float, tol: float = 1e-8) -> QuadratureResult:
    """∫_a^b |ζ(σ+it)|² dt on the oscillation-aware panel partition."""
    return integrate_panels(abs2_panel_function(ev, sigma), a, b, tol, edges=panel_edges(a, b), batched=True)


def dirichlet_poly_sq_integral(N: int, sigma: float, a: float, b: float) -> float:
    """Closed form of ∫_a^b |Σ_{k≤N} k^{-σ-it}|² dt.

    (b−a)Σ k^{-2σ} + 2Σ_{k<ℓ} (kℓ)^{-σ}[sin(b log(ℓ/k)) − sin(a log(ℓ/k))]/log(ℓ/k),
    summed row by row with ``math.fsum``.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if not a < b:
        raise ValueError("need a < b")
    k = np.arange(1, N + 1, dtype=float)
    logk = np.log(k)
    w = k**-sigma
    parts = [(b - a) * math.fsum(w * w)]
    for i in range(N - 1):
        lg = logk[i + 1 :] - logk[i]
        row = w[i] * w[i + 1 :] * (np.sin(b * lg) - np.sin(a * lg)) / lg
        parts.append(2.0 * math.fsum(row))
    return math.fsum(parts)


def mean_square_density(sigma: float) -> Callable[[np.ndarray], np.ndarray]:
    """Local average of |ζ(σ+it)|² at large |t|: log(|t|/2π) + 2γ on σ = 1/2, else ζ(2σ).

    Used as the tail density beyond a truncation height. It is the mean
    behaviour, not a pointwise majorant.
    """
    if sigma == 0.5:

        def dens(t: np.ndarray) -> np.ndarray:
            return np.maximum(np.log(np.abs(t)) - LOG_2PI + 2.0 * EULER_GAMMA, 0.0)

        return dens
    if sigma < 0.5:
        raise ValueError("mean-square density implemented for sigma >= 1/2")
    z = zeta_real(2.0 * sigma)

    def const(t: np.ndarray) -> np.ndarray:
        return np.full(np.shape(t), z)

    return const


@dataclass(frozen=True)
class LocalIntegralReport:
    a: float
    b: float
    sigma: float
    value: float
    error_estimate: float
    converged: bool
    prediction: float
    residual: float


def local_zeta_integral(
    ev: ZetaEvaluator, a: float, b: float, sigma: float, tol: float = 1e-8
) -> LocalIntegralReport:
    """∫_a^b |ζ(σ+it)|² dt next to −ζ(2σ)(b−a) + 4·S_{⌊b⌋,σ}(g(a,b)).

    The prediction is left as NaN on σ = 1/2, where ζ(2σ) is the pole.
    """
    from .funclib import make_gab
    from .riemann import quadratic_riemann_sum

    if not 1 <= a < b <= ev.ceiling:
        raise ValueError("need 1 <= a < b <= ceiling")
    if not 0.5 <= sigma < 1:
        raise ValueError("sigma must lie in [1/2, 1)")
    quad = zeta_sq_integral(ev, sigma, a, b, tol)
    if sigma == 0.5:
        prediction = math.nan
    else:
        s = quadratic_riemann_sum(make_gab(a, b), int(math.floor(b)), sigma)
        prediction = -zeta_real(2.0 * sigma) * (b - a) + 4.0 * s
    return LocalIntegralReport(
        a, b, sigma, quad.value, quad.error_estimate, quad.converged, prediction, quad.value - prediction
    )


def _zeta_any_real(s: float) -> float:
    """ζ(s) for real s > −1, s ∉ {0, 1}; s < 0 goes through the functional equation."""
    if s > 0:
        return zeta_real(s)
    if s == 0:
        return -0.5
    return 2.0**s * math.pi ** (s - 1.0) * math.sin(math.pi * s / 2.0) * math.gamma(1.0 - s) * zeta_real(1.0 - s)


def fractional_part_integral(sigma: float, cutoff: int = 100_000) -> tuple[float, float]:
    """∫_0^∞ {1/x}² x^{2σ-1} dx = ∫_0^∞ {y}² y^{-2σ-1} dy and an error estimate.

    [0,1] is exact, each unit interval [k, k+1] takes 10-point Gauss-Legendre
    (the integrand is smooth there) and k > cutoff is a midpoint-rule tail
    integral. The estimate is the change when the cutoff is halved.
    """
    if not 0 < sigma < 1:
        raise ValueError("sigma must lie in (0, 1)")
    alpha = 2.0 * sigma + 1.0
    x, w = np.polynomial.legendre.leggauss(10)
    u, w = 0.5 * (x + 1.0), 0.5 * w

    def body(kmax: int) -> float:
        k = np.arange(1, kmax + 1, dtype=float)
        vals = (u**2)[None, :] * (k[:, None] + u[None, :]) ** -alpha
        rows = vals @ w
        tail = float(np.sum(w * u**2 * (kmax + 0.5 + u) ** (1.0 - alpha)) / (alpha - 1.0))
        return math.fsum(rows) + tail

    head = 1.0 / (2.0 - 2.0 * sigma)
    fine = body(cutoff)
    coarse = body(cutoff // 2)
    return head + fine, abs(fine - coarse)


@dataclass(frozen=True)
class ParsevalReport:
    sigma: float
    closed_form: float
    fractional_integral: float
    fractional_error: float
    agreement: float


def parseval_constant(sigma: float, tol: float = 1e-6) -> ParsevalReport:
    """−(1/σ)(ζ(2σ)/2 + ζ(2σ−1)/(2σ−1)) and the fractional-part integral route.

    On σ = 1/2 the closed form is its limit log 2π − γ; the ζ-quadrature form
    of that case is ``parseval_half``.
    """
    if not 0 < sigma < 1:
        raise ValueError("sigma must lie in (0, 1)")
    if sigma == 0.5:
        closed = LOG_2PI - EULER_GAMMA
    else:
        closed = -(_zeta_any_real(2.0 * sigma) / 2.0 + _zeta_any_real(2.0 * sigma - 1.0) / (2.0 * sigma - 1.0)) / sigma
    cutoff = 100_000
    frac, err = fractional_part_integral(sigma, cutoff)
    while err > tol and cutoff < 3_200_000:
        cutoff *= 2
        frac, err = fractional_part_integral(sigma, cutoff)
    return ParsevalReport(sigma, closed, frac, err, abs(frac - closed))


def parseval_bracket(sigma: float) -> float:
    """ζ(2σ)/2 + ζ(2σ−1)/(2σ−1), negative on (0, 1)."""
    return _zeta_any_real(2.0 * sigma) / 2.0 + _zeta_any_real(2.0 * sigma - 1.0) / (2.0 * sigma - 1.0)


@dataclass(frozen=True)
class CauchyIntegral:
    """∫ |ζ(σ+it)|²/(b² + (t−u)²) dt over |t| ≤ Tmax plus an estimated tail."""

    sigma: float
    b: float
    u: float
    Tmax: float
    core: float
    tail: float
    error_estimate: float
    converged: bool

    @property
    def value(self) -> float:
        return self.core + self.tail


def zeta_cauchy_integral(
    ev: ZetaEvaluator, sigma: float, b: float, u: float, Tmax: float, tol: float = 1e-7
) -> CauchyIntegral:
    """Cauchy-kernel integral of |ζ(σ+i·)|² centred at u with width b.

    For u = 0 the integrand is even, so only [0, Tmax] is integrated. The part
    beyond Tmax uses ``mean_square_density``; it is added to the value and its
    size is also added to the error estimate.
    """
    if b <= 0:
        raise ValueError("kernel width must be positive")
    if not Tmax > abs(u):
        raise ValueError("Tmax must exceed |u|")
    if Tmax > ev.ceiling:
        raise ValueError("Tmax exceeds the desk ceiling")
    zf = abs2_panel_function(ev, sigma)

    def integrand(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        t = gk_nodes(lo, hi)
        return zf(lo, hi) / (b * b + (t - u) ** 2)

    if u == 0:
        res = integrate_panels(integrand, 0.0, Tmax, tol / 2.0, edges=panel_edges(0.0, Tmax), batched=True)
        core, err = 2.0 * res.value, 2.0 * res.error_estimate
    else:
        res = integrate_panels(integrand, -Tmax, Tmax, tol, edges=panel_edges(-Tmax, Tmax), batched=True)
        core, err = res.value, res.error_estimate
    tail = cauchy_tail(mean_square_density(sigma), b, u, Tmax)
    return CauchyIntegral(sigma, b, u, Tmax, core, tail, err + abs(tail), res.converged)


@dataclass(frozen=True)
class ConstantReport:
    """A normalised Cauchy integral with the quantity it is compared to."""

    value: float
    error_estimate: float
    tail: float
    reference: float
    converged: bool

    @property
    def difference(self) -> float:
        return self.value - self.reference


def parseval_half(ev: ZetaEvaluator, Tmax: float, tol: float = 1e-7) -> ConstantReport:
    """(1/2π)∫|ζ(1/2+it)|²/(1/4+t²) dt against log 2π − γ."""
    if Tmax < 100:
        raise ValueError("Tmax must be at least 100")
    ci = zeta_cauchy_integral(ev, 0.5, 0.5, 0.0, Tmax, tol * 2.0 * math.pi)
    scale = 1.0 / (2.0 * math.pi)
    return ConstantReport(
        ci.value * scale, ci.error_estimate * scale, ci.tail * scale, LOG_2PI - EULER_GAMMA, ci.converged
    )


def lw_cauchy_integral(ev: ZetaEvaluator, n: int, Tmax: float, tol: float = 1e-7) -> ConstantReport:
    """(1/π)∫|ζ(1/2+it)|²·n/(n²+t²) dt; the reference is log n, so ``difference`` reads off C₁."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if Tmax < 50 * n:
        raise ValueError("Tmax must be at least 50·n")
    scale = n / math.pi
    ci = zeta_cauchy_integral(ev, 0.5, float(n), 0.0, Tmax, tol / scale)
    return ConstantReport(ci.value * scale, ci.error_estimate * scale, ci.tail * scale, math.log(n), ci.converged)


def mean_value(ev: ZetaEvaluator, T: float, sigma: float, tol: Optional[float] = None) -> QuadratureResult:
    """∫_0^T |ζ(σ+it)|² dt."""
    if not 0 < T <= ev.ceiling:
        raise ValueError("need 0 < T <= ceiling")
    return zeta_sq_integral(ev, sigma, 0.0, T, tol if tol is not None else 1e-9 * max(T, 1.0))


@dataclass(frozen=True)
class StepanovScan:
    """Unit-window integrals w[n−1] = ∫_n^{n+1} |ζ(σ+it)|² dt for n = 1..N."""

    sigma: float
    n: np.ndarray
    windows: np.ndarray
    errors: np.ndarray
    running_sup: np.ndarray
    converged: bool


def stepanov_scan(ev: ZetaEvaluator, sigma: float, N: int, tol: float = 1e-9) -> StepanovScan:
    """All unit-window integrals on [1, N+1] from one panel quadrature.

    ``tol`` is the target per window.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if N + 1 > ev.ceiling:
        raise ValueError("N exceeds the desk ceiling")
    a, b = 1.0, float(N + 1)
    detail = integrate_panels_detailed(
        abs2_panel_function(ev, sigma), a, b, tol * N, edges=panel_edges(a, b), batched=True
    )
    # panels never straddle an integer, so the left edge identifies the window
    idx = np.floor(detail.lo).astype(np.int64) - 1
    windows = np.zeros(N)
    errors = np.zeros(N)
    np.add.at(windows, idx, detail.values)
    np.add.at(errors, idx, detail.errors)
    return StepanovScan(
        sigma,
        np.arange(1, N + 1),
        windows,
        errors,
        np.maximum.accumulate(windows),
        detail.converged,
    )


def amalgam_norm_bounds(b: float, terms: int = 10_000) -> tuple[float, float]:
    """k_b = 1/(b²+1) and K_b = 2Σ_{w≥0} 1/(b²+w²) + 1/b².

    The series runs to ``terms`` and the rest is the midpoint-rule integral
    (π/2 − arctan((W+1/2)/b))/b.
    """
    if b <= 0:
        raise ValueError("b must be positive")
    w = np.arange(0, terms + 1, dtype=float)
    head = math.fsum(1.0 / (b * b + w * w))
    tail = (math.pi / 2.0 - math.atan((terms + 0.5) / b)) / b
    return 1.0 / (b * b + 1.0), 2.0 * (head + tail) + 1.0 / (b * b)
