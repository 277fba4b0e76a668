"""Quadrature engines.

``integrate_adaptive`` is the general-purpose embedded-Simpson integrator.
``integrate_panels`` is a batched Gauss-Kronrod engine for expensive,
vectorised, oscillatory integrands such as |ζ(σ+it)|², where evaluating all
nodes of all panels in one call matters far more than the rule's simplicity.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    panels_used: int
    converged: bool


def _simpson_panel(f: ArrayFn, a: float, b: float, fa: float, fm: float, fb: float):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = np.asarray(f(np.array([lm, rm])), dtype=float)
    h = b - a
    coarse = h / 6.0 * (fa + 4.0 * fm + fb)
    fine = h / 12.0 * (fa + 4.0 * flm + 2.0 * fm + 4.0 * frm + fb)
    err = abs(fine - coarse) / 15.0
    value = fine + (fine - coarse) / 15.0
    return value, err, (a, m, fa, flm, fm), (m, b, fm, frm, fb)


def integrate_adaptive(
    f: ArrayFn,
    a: float,
    b: float,
    tol: float,
    max_panels: int = 200_000,
    min_panels: int = 1,
) -> QuadratureResult:
    """Globally adaptive embedded-Simpson quadrature of ``f`` over [a, b].

    ``f`` must accept a numpy array of abscissae. The panel with the largest
    error estimate is bisected until the summed estimate drops below ``tol``.

    Args:
        f: vectorised integrand.
        a: lower limit.
        b: upper limit, a < b.
        tol: absolute error target.
        max_panels: bisection budget before giving up.
        min_panels: initial uniform partition.

    Returns:
        QuadratureResult; ``converged`` is False if the budget ran out.
    """
    if not a < b:
        raise ValueError("integration requires a < b")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    edges = np.linspace(a, b, min_panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    fe = np.asarray(f(edges), dtype=float)
    fm = np.asarray(f(mids), dtype=float)

    heap: list = []
    total_err = 0.0
    for i in range(min_panels):
        val, err, left, right = _simpson_panel(f, edges[i], edges[i + 1], fe[i], fm[i], fe[i + 1])
        # sequence number keeps ordering deterministic on equal errors
        heapq.heappush(heap, (-err, i, val, left, right))
        total_err += err
    count = min_panels
    seq = min_panels
    while total_err > tol and count < max_panels:
        neg_err, _, _, left, right = heapq.heappop(heap)
        total_err += neg_err
        for a0, b0, fa0, fm0, fb0 in (left, right):
            val, err, l2, r2 = _simpson_panel(f, a0, b0, fa0, fm0, fb0)
            heapq.heappush(heap, (-err, seq, val, l2, r2))
            seq += 1
            total_err += err
        count += 1
    # sum panels in left-to-right order for bit-stable results
    panels = sorted(heap, key=lambda item: item[3][0])
    value = math.fsum(item[2] for item in panels)
    err = math.fsum(-item[0] for item in panels)
    return QuadratureResult(value, err, len(panels), err <= tol)


# Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_KW = np.concatenate([_WK[:-1], _WK[::-1]])
_GW = np.zeros(15)
_GW[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


GK_NODES = _NODES


def gk_nodes(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """The 15 Kronrod abscissae of each panel, shape (panels, 15)."""
    return 0.5 * (hi + lo)[:, None] + 0.5 * (hi - lo)[:, None] * _NODES[None, :]


def _gk_batch(f, lo: np.ndarray, hi: np.ndarray, batched: bool):
    half = 0.5 * (hi - lo)
    if batched:
        fx = np.asarray(f(lo, hi), dtype=float)
    else:
        x = gk_nodes(lo, hi)
        fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    k = half * (fx @ _KW)
    g = half * (fx @ _GW)
    return k, np.abs(k - g)


@dataclass(frozen=True)
class PanelQuadrature:
    """Accepted panels of ``integrate_panels_detailed``, sorted by left edge."""

    lo: np.ndarray
    hi: np.ndarray
    values: np.ndarray
    errors: np.ndarray
    panels_used: int
    converged: bool

    def summary(self, tol: float) -> QuadratureResult:
        err = math.fsum(self.errors)
        return QuadratureResult(math.fsum(self.values), err, self.panels_used, self.converged and err <= tol * 1.000001)


def integrate_panels_detailed(
    f: ArrayFn,
    a: float,
    b: float,
    tol: float,
    max_width: Union[float, Callable[[float], float]] = math.inf,
    max_rounds: int = 50,
    edges: Optional[np.ndarray] = None,
    batched: bool = False,
) -> PanelQuadrature:
    """Batched Gauss-Kronrod (7/15) quadrature with uniform refinement rounds.

    The initial partition is ``edges`` if given, otherwise it respects
    ``max_width``, which may depend on the panel's left end (to follow a local
    oscillation frequency). Each round evaluates all active panels in a single
    call and halves those whose error exceeds their proportional share of
    ``tol``. With ``batched`` the integrand is called as ``f(lo, hi)`` and must
    return its values at ``gk_nodes(lo, hi)``.
    """
    if not a < b:
        raise ValueError("integration requires a < b")
    if edges is None:
        pts = [a]
        x = a
        while x < b:
            w = max_width(x) if callable(max_width) else max_width
            if not w > 0:
                raise ValueError("panel width must be positive")
            x = min(b, x + w)
            pts.append(x)
        edges_arr = np.array(pts)
    else:
        edges_arr = np.asarray(edges, dtype=float)
        if edges_arr[0] != a or edges_arr[-1] != b or np.any(np.diff(edges_arr) <= 0):
            raise ValueError("edges must increase from a to b")
    lo, hi = edges_arr[:-1], edges_arr[1:]
    acc_val: list[np.ndarray] = []
    acc_err: list[np.ndarray] = []
    acc_lo: list[np.ndarray] = []
    acc_hi: list[np.ndarray] = []
    panels = 0
    span = b - a
    converged = True
    for round_ in range(max_rounds + 1):
        val, err = _gk_batch(f, lo, hi, batched)
        panels += lo.size
        share = tol * (hi - lo) / span
        ok = err <= share
        if round_ == max_rounds:
            converged = bool(np.all(ok))
            ok[:] = True
        acc_val.append(val[ok])
        acc_err.append(err[ok])
        acc_lo.append(lo[ok])
        acc_hi.append(hi[ok])
        if np.all(ok):
            break
        bad_lo, bad_hi = lo[~ok], hi[~ok]
        mid = 0.5 * (bad_lo + bad_hi)
        lo = np.concatenate([bad_lo, mid])
        hi = np.concatenate([mid, bad_hi])
    all_lo = np.concatenate(acc_lo)
    order = np.argsort(all_lo, kind="stable")
    return PanelQuadrature(
        all_lo[order],
        np.concatenate(acc_hi)[order],
        np.concatenate(acc_val)[order],
        np.concatenate(acc_err)[order],
        panels,
        converged,
    )


def integrate_panels(
    f: ArrayFn,
    a: float,
    b: float,
    tol: float,
    max_width: Union[float, Callable[[float], float]] = math.inf,
    max_rounds: int = 50,
    edges: Optional[np.ndarray] = None,
    batched: bool = False,
) -> QuadratureResult:
    """Summed result of ``integrate_panels_detailed``."""
    detail = integrate_panels_detailed(f, a, b, tol, max_width, max_rounds, edges, batched)
    return detail.summary(tol)


def integrate_singular_power(
    u: ArrayFn, sigma: float, tol: float, max_panels: int = 200_000
) -> QuadratureResult:
    """∫_0^1 u(t) t^{-σ} dt via t = w^{1/(1-σ)}, which removes the singularity.

    After substitution the integrand is u(w^{1/(1-σ)})/(1-σ) on [0, 1].
    """
    if not 0 <= sigma < 1:
        raise ValueError("sigma must lie in [0, 1)")
    p = 1.0 / (1.0 - sigma)

    def transformed(w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        return p * np.asarray(u(w**p), dtype=float)

    return integrate_adaptive(transformed, 0.0, 1.0, tol, max_panels=max_panels, min_panels=16)


def cauchy_tail(
    density: Union[float, Callable[[np.ndarray], np.ndarray]], b: float, u: float, Tmax: float, tol: float = 1e-10
) -> float:
    """∫_{|t|>Tmax} W(t)/(b²+(t-u)²) dt for a majorant W of the integrand.

    A constant W has the closed form W·(π − arctan((Tmax−u)/b) − arctan((Tmax+u)/b))/b.
    A callable W (even in t) is integrated after the substitution t = Tmax/v.
    """
    if not callable(density):
        return density * (math.pi - math.atan((Tmax - u) / b) - math.atan((Tmax + u) / b)) / b

    def side(sign: float) -> float:
        def g(v: np.ndarray) -> np.ndarray:
            # written so that v → 0 has the finite limit density(∞)/Tmax; the
            # v = 0 node itself is nudged off the endpoint
            v = np.maximum(np.asarray(v, dtype=float), 1e-12)
            t = Tmax / v
            return np.asarray(density(t)) * Tmax / ((b * v) ** 2 + (sign * Tmax - u * v) ** 2)

        return integrate_adaptive(g, 0.0, 1.0, tol, min_panels=8).value

    return side(1.0) + side(-1.0)


def integrate_cauchy_kernel(
    w,
    b: float,
    u: float,
    tol: float,
    Tmax: float,
    tail_density: Optional[Union[float, Callable[[np.ndarray], np.ndarray]]] = None,
    max_width: Union[float, Callable[[float], float]] = math.inf,
    edges: Optional[np.ndarray] = None,
    batched: bool = False,
) -> QuadratureResult:
    """∫_{-Tmax}^{Tmax} w(t)/(b²+(t-u)²) dt with the analytic tail in the error.

    ``tail_density`` is a caller-supplied majorant for the local average of
    ``w`` beyond ``Tmax``; without one the tail is left out of the estimate.
    ``edges`` and ``batched`` are forwarded to ``integrate_panels``.
    """
    if Tmax <= abs(u):
        raise ValueError("Tmax must exceed |u|")
    if b <= 0:
        raise ValueError("kernel width must be positive")

    if batched:

        def integrand(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
            t = gk_nodes(lo, hi)
            return np.asarray(w(lo, hi), dtype=float) / (b * b + (t - u) ** 2)

    else:

        def integrand(t: np.ndarray) -> np.ndarray:
            return np.asarray(w(t), dtype=float) / (b * b + (t - u) ** 2)

    core = integrate_panels(integrand, -Tmax, Tmax, tol, max_width=max_width, edges=edges, batched=batched)
    tail = 0.0 if tail_density is None else cauchy_tail(tail_density, b, u, Tmax)
    return QuadratureResult(core.value, core.error_estimate + tail, core.panels_used, core.converged)
