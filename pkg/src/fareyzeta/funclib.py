"""Test functions on (0, 1] with their endpoint conventions and Fourier data.

Each builtin documents why it is regular enough at rationals (a Dini-type
condition) for its Fourier series to converge there; this is never checked at
runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Any, Callable, Mapping, Optional

import numpy as np

from .quad import integrate_singular_power

ArrayFn = Callable[[np.ndarray], np.ndarray]

# Below this |c·log x| the sinc-type quotient sin(c·L)/L switches to Taylor.
_TAYLOR_SWITCH = 1e-4


@dataclass(frozen=True)
class PeriodicFunction:
    """A 1-periodic test function evaluated on (0, 1].

    ``eval`` is vectorised over numpy arrays. ``eval_log``, when present,
    computes the same function from L = log x; lattice sums use it with
    L = log1p((k-ℓ)/ℓ), which keeps full relative precision next to x = 1.
    """

    eval: ArrayFn
    value_at_0: float
    endpoint_value: float
    exact_integral: Optional[float] = None
    exact_weighted_integral: Optional[Callable[[float], float]] = None
    fourier: Optional[Mapping[int, complex]] = None
    eval_log: Optional[ArrayFn] = None
    name: str = "f"
    extras: Mapping[str, Any] = field(default_factory=dict)

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        out = np.asarray(self.eval(arr), dtype=float)
        return float(out) if out.ndim == 0 else out

    def at_ratio(self, k: np.ndarray, ell: np.ndarray) -> np.ndarray:
        """Values at k/ℓ for integer arrays with 1 ≤ k ≤ ℓ."""
        k = np.asarray(k)
        ell = np.asarray(ell)
        if self.eval_log is not None:
            return np.asarray(self.eval_log(np.log1p((k - ell) / ell.astype(float))), dtype=float)
        return np.asarray(self.eval(k / ell.astype(float)), dtype=float)

    def fourier_value(self, x: np.ndarray) -> np.ndarray:
        """Re Σ_ν c(ν) e^{2πiνx} from the finite coefficient map."""
        if self.fourier is None:
            raise ValueError(f"{self.name} has no Fourier coefficient map")
        x = np.asarray(x, dtype=float)
        total = np.zeros(x.shape, dtype=complex)
        for nu, c in self.fourier.items():
            total += complex(c) * np.exp(2j * math.pi * nu * x)
        return total.real


def _sin_over_log(c: float, L: np.ndarray) -> np.ndarray:
    """sin(c·L)/L with the Taylor form c − c³L²/6 + c⁵L⁴/120 near L = 0."""
    L = np.asarray(L, dtype=float)
    out = np.empty(L.shape)
    small = np.abs(c * L) < _TAYLOR_SWITCH
    Ls = L[small]
    out[small] = c - c**3 * Ls**2 / 6.0 + c**5 * Ls**4 / 120.0
    big = ~small
    out[big] = np.sin(c * L[big]) / L[big]
    return out


def _from_log(eval_log: ArrayFn, at_zero: float) -> ArrayFn:
    def f(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape, float(at_zero))
        pos = x > 0
        out[pos] = eval_log(np.log(x[pos]))
        return out

    return f


def _weighted_integral_numeric(u: ArrayFn, sigma: float) -> float:
    res = integrate_singular_power(u, sigma, 1e-12)
    return res.value


def make_cosine() -> PeriodicFunction:
    """h(x) = cos 2πx. Smooth, so every Fourier-convergence test applies."""

    def h(x: np.ndarray) -> np.ndarray:
        return np.cos(2.0 * math.pi * np.asarray(x, dtype=float))

    @lru_cache(maxsize=64)
    def weighted(sigma: float) -> float:
        if sigma == 0:
            return 0.0
        return _weighted_integral_numeric(h, sigma)

    return PeriodicFunction(
        eval=h,
        value_at_0=1.0,
        endpoint_value=1.0,
        exact_integral=0.0,
        exact_weighted_integral=weighted,
        fourier={1: 0.5, -1: 0.5},
        name="cos2pi",
    )


def make_g(a: float) -> PeriodicFunction:
    """g(a, x) = sin(a log x)/log x with g(a, 1) = a and g(a, 0) = 0.

    Analytic on (0, 1] and bounded by 1/|log x| near 0, hence of bounded
    variation on every [δ, 1]: Dini's condition holds at each rational.
    ∫_0^1 g(a, x) x^{-σ} dx = arctan(a/(1−σ)) for σ < 1.
    """
    if a == 0:
        raise ValueError("a must be nonzero")
    a = float(a)

    def eval_log(L: np.ndarray) -> np.ndarray:
        return _sin_over_log(a, L)

    def weighted(sigma: float) -> float:
        return integral_g_sigma(a, sigma)

    return PeriodicFunction(
        eval=_from_log(eval_log, 0.0),
        value_at_0=0.0,
        endpoint_value=a,
        exact_integral=math.atan(a),
        exact_weighted_integral=weighted,
        eval_log=eval_log,
        name=f"g(a={a:g})",
    )


def _half_difference(lo: float, hi: float) -> ArrayFn:
    """L ↦ [sin(hi·L) − sin(lo·L)]/(2L)."""

    def eval_log(L: np.ndarray) -> np.ndarray:
        return 0.5 * (_sin_over_log(hi, L) - _sin_over_log(lo, L))

    return eval_log


def make_gab(a: float, b: float) -> PeriodicFunction:
    """g(a,b)(x) = sin((b−a)/2·log x)·cos((a+b)/2·log x)/log x, value (b−a)/2 at 1.

    Evaluated in the product-to-sum form [sin(b·L) − sin(a·L)]/(2L).
    """
    if not a < b:
        raise ValueError("need a < b")
    a, b = float(a), float(b)
    eval_log = _half_difference(a, b)

    def weighted(sigma: float) -> float:
        return 0.5 * (integral_g_sigma(b, sigma) - integral_g_sigma(a, sigma))

    return PeriodicFunction(
        eval=_from_log(eval_log, 0.0),
        value_at_0=0.0,
        endpoint_value=0.5 * (b - a),
        exact_integral=0.5 * (math.atan(b) - math.atan(a)),
        exact_weighted_integral=weighted,
        eval_log=eval_log,
        name=f"g(a={a:g},b={b:g})",
    )


def make_gn(n: int) -> PeriodicFunction:
    """g_n(x) = cos((n+½)log x)·sin(½ log x)/log x, with g_n(1) = ½ and g_n(0) = 0.

    This is g(a,b) with a = n, b = n+1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    f = make_gab(float(n), float(n + 1))
    return replace(f, name=f"g_{n}")


def gn_product_form(n: int, x: np.ndarray) -> np.ndarray:
    """g_n straight from its product definition (no stabilisation near x = 1)."""
    L = np.log(np.asarray(x, dtype=float))
    return np.cos((n + 0.5) * L) * np.sin(0.5 * L) / L


def _log_weighted(base_log: ArrayFn, sigma: float) -> ArrayFn:
    def ev_log(L: np.ndarray) -> np.ndarray:
        return np.asarray(base_log(L)) * np.exp(-sigma * L)

    return ev_log


def sigma_weight(f: PeriodicFunction, sigma: float) -> PeriodicFunction:
    """f_σ(x) = f(x)/x^σ; the value at 0 is set to 0 (lattice sums never use it)."""
    if sigma == 0:
        return f
    base_eval = f.eval

    def ev(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        pos = x > 0
        out[pos] = np.asarray(base_eval(x[pos])) * x[pos] ** (-sigma)
        return out

    ev_log = None if f.eval_log is None else _log_weighted(f.eval_log, sigma)

    integral = None
    if f.exact_weighted_integral is not None and sigma < 1:
        integral = f.exact_weighted_integral(sigma)
    return PeriodicFunction(
        eval=ev,
        value_at_0=0.0,
        endpoint_value=f.endpoint_value,
        exact_integral=integral,
        exact_weighted_integral=None,
        fourier=None,
        eval_log=ev_log,
        name=f"{f.name}_sigma{sigma:g}",
    )


def fourier_coeff_numeric(f: PeriodicFunction, nu: int, sigma: float, tol: float) -> complex:
    """c_{f_σ}(ν) = ∫_0^1 f(x) x^{-σ} e^{-2πiνx} dx by singular quadrature.

    Raises RuntimeError carrying the best estimate if either part fails to
    converge.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not 0 <= sigma < 1:
        raise ValueError("sigma must lie in [0, 1) for x^-sigma to be integrable")
    w = 2.0 * math.pi * nu

    def re_part(x: np.ndarray) -> np.ndarray:
        return _safe_eval(f, x) * np.cos(w * x)

    def im_part(x: np.ndarray) -> np.ndarray:
        return -_safe_eval(f, x) * np.sin(w * x)

    results = [integrate_singular_power(part, sigma, tol / 2) for part in (re_part, im_part)]
    value = complex(results[0].value, results[1].value)
    if not all(r.converged for r in results):
        err = sum(r.error_estimate for r in results)
        raise RuntimeError(f"quadrature did not converge: estimate {value}, error {err}")
    return value


def _safe_eval(f: PeriodicFunction, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, float(f.value_at_0))
    pos = x > 0
    out[pos] = np.asarray(f.eval(x[pos]))
    return out


@dataclass(frozen=True)
class SeriesCoefficient:
    value: float
    omitted_term_bound: float
    largest_term: float

    def __float__(self) -> float:
        return self.value


def gn_sigma_coeff_series(n: int, sigma: float, k: int, terms: int = 80) -> SeriesCoefficient:
    """Re c_{g_{n,σ}}(k) from the cosine-moment series.

    Term m is (−1)^m (2πk)^{2m}/(2m)! · [arctan((n+1)/(2m+1−σ)) − arctan(n/(2m+1−σ))]/2.
    The terms grow like the Taylor terms of cos(2πk) before decaying, so the
    series is refused once the largest term exceeds 10⁸ times the result.
    """
    if not 0.5 < sigma < 1:
        raise ValueError("sigma must lie in (1/2, 1)")
    if n < 1 or terms < 1:
        raise ValueError("n and terms must be positive")
    w = 2.0 * math.pi * k
    vals = []
    coef = 1.0  # (2πk)^{2m}/(2m)!
    for m in range(terms + 1):
        if m > 0:
            coef *= w * w / ((2 * m - 1) * (2 * m))
        q = 2 * m + 1 - sigma
        moment = 0.5 * (math.atan((n + 1) / q) - math.atan(n / q))
        vals.append((-1) ** m * coef * moment)
    omitted_coef = coef * w * w / ((2 * terms + 1) * (2 * terms + 2))
    q = 2 * terms + 3 - sigma
    omitted = omitted_coef * 0.5 * abs(math.atan((n + 1) / q) - math.atan(n / q))
    value = math.fsum(vals)
    largest = max(abs(v) for v in vals)
    scale = max(abs(value), abs(vals[0]))
    if largest > 1e8 * scale:
        raise ValueError(
            f"series unstable for k={k} (largest term {largest:.3g} vs result {scale:.3g}); "
            "use fourier_coeff_numeric instead"
        )
    return SeriesCoefficient(value, omitted, largest)


def integral_g_sigma(a: float, sigma: float) -> float:
    """∫_0^1 sin(a log t)/(t^σ log t) dt = arctan(a/(1−σ)), valid for σ < 1."""
    if sigma >= 1:
        raise ValueError("sigma must be below 1")
    return math.atan(a / (1.0 - sigma))


def make_jordan_function(a: float, truncation: int) -> PeriodicFunction:
    """f(x) = c(a)·Σ_{0<|ℓ|≤T} |ℓ|^{-a} e_ℓ(x) with c(a) = 1/(2ζ(a)).

    The full series is absolutely convergent (a > 1), so f is continuous and
    the truncation error is uniformly below 2c(a)·Σ_{ℓ>T} ℓ^{-a}.
    """
    from .zeta import zeta_real

    if not 1 < a < 2:
        raise ValueError("a must lie in (1, 2)")
    if truncation < 1:
        raise ValueError("truncation must be positive")
    c = 1.0 / (2.0 * zeta_real(a))
    ell = np.arange(1, truncation + 1, dtype=float)
    amp = 2.0 * c * ell ** (-a)
    tail_bound = 2.0 * c * truncation ** (1.0 - a) / (a - 1.0)

    def f(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        out = np.empty(flat.size)
        step = max(1, 2_000_000 // truncation)
        for s in range(0, flat.size, step):
            chunk = flat[s : s + step]
            out[s : s + step] = np.cos(2.0 * math.pi * np.outer(chunk, ell)) @ amp
        return out.reshape(x.shape)

    coeffs: dict[int, complex] = {}
    for l_int, amp_l in zip(range(1, truncation + 1), amp):
        coeffs[l_int] = amp_l / 2.0
        coeffs[-l_int] = amp_l / 2.0
    return PeriodicFunction(
        eval=f,
        value_at_0=float(amp.sum()),
        endpoint_value=float(amp.sum()),
        exact_integral=0.0,
        fourier=coeffs,
        name=f"jordan(a={a:g},T={truncation})",
        extras={"normalizer": c, "tail_bound": tail_bound, "a": a, "truncation": truncation},
    )


def make_trig_polynomial(coeffs: Mapping[int, complex], name: str = "trig") -> PeriodicFunction:
    """Real trigonometric polynomial Re Σ c(ν)e^{2πiνx}; exact under every path.

    Coefficients should satisfy c(−ν) = conj c(ν) for the function to be real.
    """
    items = [(int(nu), complex(c)) for nu, c in coeffs.items()]
    # Re Σ c(ν)e(νx) = Σ_ν [Re c(ν)·cos 2πνx − Im c(ν)·sin 2πνx], folded onto ν ≥ 0
    cos_amp: dict[int, float] = {}
    sin_amp: dict[int, float] = {}
    for nu, c in items:
        k = abs(nu)
        cos_amp[k] = cos_amp.get(k, 0.0) + c.real
        sin_amp[k] = sin_amp.get(k, 0.0) - (c.imag if nu >= 0 else -c.imag)
    const = cos_amp.pop(0, 0.0)
    sin_amp.pop(0, None)
    terms = [(k, cos_amp.get(k, 0.0), sin_amp.get(k, 0.0)) for k in sorted(set(cos_amp) | set(sin_amp))]

    def f(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape, const)
        for k, a, b in terms:
            phase = (2.0 * math.pi * k) * x
            if a:
                out += a * np.cos(phase)
            if b:
                out += b * np.sin(phase)
        return out

    c0 = complex(coeffs.get(0, 0.0)).real
    total = float(sum(c for _, c in items).real)
    return PeriodicFunction(
        eval=f,
        value_at_0=total,
        endpoint_value=total,
        exact_integral=c0,
        fourier=dict(items),
        name=name,
    )


def random_trig_polynomial(rng: np.random.Generator, degree: int = 8) -> PeriodicFunction:
    """Random real trigonometric polynomial of the given degree."""
    coeffs: dict[int, complex] = {0: complex(rng.normal())}
    for nu in range(1, degree + 1):
        c = complex(rng.normal(), rng.normal()) / 2.0
        coeffs[nu] = c
        coeffs[-nu] = c.conjugate()
    return make_trig_polynomial(coeffs, name=f"trig(deg={degree})")


def power_lift(p: PeriodicFunction, sigma: float) -> PeriodicFunction:
    """f(x) = x^σ·p(x), the function whose σ-weighting f_σ is exactly p.

    Lets a trigonometric polynomial play the role of f_σ, so every Fourier
    formula stated for f_σ has finitely many terms.
    """
    if p.exact_integral is None:
        raise ValueError(f"{p.name} has no exact integral")
    base = p.eval
    c0 = p.exact_integral

    def f(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return x**sigma * np.asarray(base(x))

    def weighted(s: float) -> float:
        if s != sigma:
            raise ValueError(f"weighted integral known only at sigma = {sigma}")
        return c0

    return PeriodicFunction(
        eval=f,
        value_at_0=0.0,
        endpoint_value=p.endpoint_value,
        exact_integral=None,
        exact_weighted_integral=weighted,
        fourier=None,
        name=f"x^{sigma:g}*{p.name}",
        extras={"f_sigma": p, "sigma": sigma},
    )
