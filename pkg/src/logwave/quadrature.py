"""Radial L2 norms of the mode field by adaptive Gauss quadrature.

Norm squares are integrals omega_n int_0^inf g(r)^2 r^(n-1) dr split at the
zone boundaries delta0 < delta < delta1.  Two evaluation modes:

    resolved: integrate the exact squared integrand, seeding panels so each
        one spans at most a fixed phase increment of t * w(r).  Cost grows
        linearly with t; intended for t up to around 1e5.
    averaged: below the radius where t * w(r) reaches a fixed phase floor
        the integrand is resolved exactly; above it the trigonometric
        factors are replaced by their phase averages, which removes the t
        dependence of the panel count.  The phase floor keeps at least a
        few full oscillation periods inside the averaged region, and the
        frequency gap w - b enters the averaged error integrand exactly,
        so the systematic averaging error stays well under one percent.

Truncation: every integrand with the global e^(-r^2 t) envelope is clipped
at r_env = sqrt(2 * tail_cutoff_exponent / t), beyond which the envelope is
below e^(-2 * tail_cutoff_exponent).  Mode values above delta decay at
least like e^(-t) (the slow rate w^2 / (a + d) exceeds 1 there), so both
high zones of solution-bearing integrands are skipped once
t >= tail_cutoff_exponent.  The unbounded tail is walked in doubling
blocks [s, 2s] until a block falls below tolerance and a geometric
extrapolation of the remainder does too.

The panel rule is a Gauss-Legendre 7/15 pair: the 15-point value is kept,
the deviation from the 7-point value is the error estimate, and the worst
panels are split in batches.  All integrands here are nonnegative, so the
running total is a faithful scale for the relative stopping test.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .evolution import FourierData, freq_gap, mode_arrays, sinc
from .symbol_core import (
    ModelParams,
    ZoneThresholds,
    inverse_frequency_remainder,
    osc_b,
    osc_freq_sq,
)

__all__ = [
    "QuadratureConfig",
    "QuadratureError",
    "NormBreakdown",
    "sphere_area",
    "integrate_adaptive",
    "norm_sq_solution",
    "norm_sq_profile",
    "norm_sq_error",
    "energy_total",
]

_G7_NODES, _G7_WEIGHTS = np.polynomial.legendre.leggauss(7)
_G15_NODES, _G15_WEIGHTS = np.polynomial.legendre.leggauss(15)
_PANEL_NODES = np.concatenate([_G7_NODES, _G15_NODES])

# A 15-point Gauss rule keeps spectral accuracy up to a few radians of
# phase per panel; half pi leaves a wide safety margin.
_PHASE_PER_PANEL = 0.5 * math.pi
# Averaging starts once a mode has completed four periods.
_PHASE_FLOOR = 8.0 * math.pi
_REFINE_BATCH = 64
_MAX_TAIL_BLOCKS = 40


class QuadratureError(RuntimeError):
    """An integral could not be driven below its tolerance."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Controls for the radial quadrature.

    mode selects resolved or averaged handling of oscillatory zones.
    rel_tol is the relative stopping tolerance per zone integral.
    max_panels bounds the panel count of a single adaptive integral.
    tail_cutoff_exponent e sets the clip radius e^(-r^2 t) = e^(-2e) and
    the time e beyond which the high zones of solution integrands are
    dropped (their envelope is then below e^(-2e)).
    """

    mode: str = "averaged"
    rel_tol: float = 1e-8
    max_panels: int = 400_000
    tail_cutoff_exponent: float = 40.0

    def __post_init__(self) -> None:
        if self.mode not in ("averaged", "resolved"):
            raise ValueError(f"mode must be 'averaged' or 'resolved', got {self.mode!r}")
        if not (0.0 < self.rel_tol <= 1e-2):
            raise ValueError(f"rel_tol must lie in (0, 1e-2], got {self.rel_tol!r}")
        if self.max_panels < 100:
            raise ValueError(f"max_panels must be at least 100, got {self.max_panels!r}")
        if not (1.0 <= self.tail_cutoff_exponent <= 300.0):
            raise ValueError(
                f"tail_cutoff_exponent must lie in [1, 300], got {self.tail_cutoff_exponent!r}"
            )


@dataclass(frozen=True)
class NormBreakdown:
    """Squared-norm contributions of the four radial zones."""

    low: float
    middle: float
    high_mid: float
    high_tail: float

    @property
    def total(self) -> float:
        return self.low + self.middle + self.high_mid + self.high_tail


_ZERO_BREAKDOWN = NormBreakdown(0.0, 0.0, 0.0, 0.0)


def sphere_area(n: int) -> float:
    """Surface measure of the unit sphere in n-dimensional space."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def _eval_panels(f, los, his):
    mid = 0.5 * (los + his)
    half = 0.5 * (his - los)
    x = mid[:, None] + half[:, None] * _PANEL_NODES[None, :]
    y = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(y)):
        bad = x.ravel()[~np.isfinite(y.ravel())][:3]
        raise QuadratureError(f"integrand returned non-finite values near r = {bad}")
    g7 = (y[:, :7] @ _G7_WEIGHTS) * half
    g15 = (y[:, 7:] @ _G15_WEIGHTS) * half
    return g15, np.abs(g15 - g7)


def integrate_adaptive(
    f,
    lo: float,
    hi: float,
    *,
    rel_tol: float = 1e-10,
    abs_floor: float = 0.0,
    max_panels: int = 400_000,
    breakpoints=None,
) -> float:
    """Adaptive integral of a vectorized f over [lo, hi].

    Panels are seeded from the breakpoints, refined worst-first in batches,
    and accepted once the summed error estimate falls below
    max(rel_tol * |value|, abs_floor).  When many refinement batches in a
    row fail to shrink the estimate, the evaluation noise floor of f has
    been reached and the current value is returned; that floor is the best
    the arithmetic supports.  Raises QuadratureError when the panel budget
    is exhausted while the estimate is still improving, or when every
    panel has been frozen at roundoff width.
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
        raise ValueError(f"need finite bounds with hi > lo, got [{lo!r}, {hi!r}]")
    pts = [lo, hi]
    if breakpoints is not None:
        inner = np.asarray(breakpoints, dtype=float)
        pts = np.concatenate([[lo], inner[(inner > lo) & (inner < hi)], [hi]])
    pts = np.unique(np.asarray(pts, dtype=float))
    los, his = pts[:-1], pts[1:]
    if len(los) > max_panels:
        raise QuadratureError(f"{len(los)} seed panels exceed the budget of {max_panels}")

    vals, errs = _eval_panels(f, los, his)
    total_v = float(vals.sum())
    total_e = float(errs.sum())
    counter = itertools.count()
    heap = [
        (-errs[i], next(counter), los[i], his[i], vals[i], errs[i]) for i in range(len(los))
    ]
    heapq.heapify(heap)
    panels = len(los)
    width_floor = 1e-15 * max(abs(lo), abs(hi), 1.0)
    stall_history: list[float] = []

    while total_e > max(rel_tol * abs(total_v), abs_floor):
        stall_history.append(total_e)
        if len(stall_history) > 12 and total_e > 0.5 * stall_history[-13]:
            return total_v
        batch = []
        while heap and len(batch) < _REFINE_BATCH:
            entry = heapq.heappop(heap)
            if entry[3] - entry[2] <= width_floor:
                continue  # frozen at roundoff width; its estimate stays in the totals
            batch.append(entry)
        if not batch:
            raise QuadratureError(
                "refinement stalled: error estimate "
                f"{total_e:.3e} above tolerance with all panels at roundoff width"
            )
        b_lo = np.array([e[2] for e in batch])
        b_hi = np.array([e[3] for e in batch])
        b_mid = 0.5 * (b_lo + b_hi)
        c_lo = np.concatenate([b_lo, b_mid])
        c_hi = np.concatenate([b_mid, b_hi])
        c_val, c_err = _eval_panels(f, c_lo, c_hi)
        for e in batch:
            total_v -= e[4]
            total_e -= e[5]
        total_v += float(c_val.sum())
        total_e += float(c_err.sum())
        for i in range(len(c_lo)):
            heapq.heappush(
                heap, (-c_err[i], next(counter), c_lo[i], c_hi[i], c_val[i], c_err[i])
            )
        panels += len(c_lo)
        if panels > max_panels:
            raise QuadratureError(
                f"no convergence within {max_panels} panels: "
                f"error estimate {total_e:.3e}, value {total_v:.3e}"
            )
    return total_v


def _w_scalar(r: float, params: ModelParams) -> float:
    return math.sqrt(float(osc_freq_sq(r, params)))


def _monotone_breakpoints(fun, lo: float, hi: float, count: int):
    """Split [lo, hi] into count parts of equal increment of increasing fun."""
    if count <= 1:
        return None
    f_lo = float(fun(np.array([lo]))[0])
    f_hi = float(fun(np.array([hi]))[0])
    targets = f_lo + (f_hi - f_lo) * np.arange(1, count) / count
    los = np.full(count - 1, lo)
    his = np.full(count - 1, hi)
    for _ in range(60):
        mids = 0.5 * (los + his)
        below = fun(mids) < targets
        los = np.where(below, mids, los)
        his = np.where(below, his, mids)
    return 0.5 * (los + his)


def _phase_breakpoints(t: float, lo: float, hi: float, params: ModelParams, cap: int):
    """Panel seeds bounding the t * w(r) phase increment per panel."""
    if t <= 0.0:
        return None
    span = t * (_w_scalar(hi, params) - _w_scalar(lo, params))
    count = int(math.ceil(span / _PHASE_PER_PANEL))
    if count > cap:
        raise QuadratureError(
            f"resolving the oscillation over [{lo:.3g}, {hi:.3g}] at t = {t:.3g} "
            f"needs {count} panels (budget {cap}); use averaged mode"
        )
    return _monotone_breakpoints(
        lambda r: np.sqrt(np.asarray(osc_freq_sq(r, params), dtype=float)), lo, hi, count
    )


def _gap_breakpoints(t: float, lo: float, hi: float, params: ModelParams, cap: int):
    """Panel seeds bounding the frequency-gap phase t * (w - b) per panel."""
    if t <= 0.0 or lo <= 0.0:
        return None
    span = t * float(freq_gap(np.array([hi]), params)[0] - freq_gap(np.array([lo]), params)[0])
    count = min(int(math.ceil(span / _PHASE_PER_PANEL)), cap)
    return _monotone_breakpoints(
        lambda r: np.asarray(freq_gap(r, params), dtype=float), lo, hi, count
    )


def _geometric_breakpoints(lo: float, hi: float, per_decade: float = 4.0):
    if lo <= 0.0 or hi <= lo:
        return None
    decades = math.log10(hi / lo)
    count = int(min(2000, max(8, math.ceil(per_decade * decades))))
    return lo * (hi / lo) ** (np.arange(1, count) / count)


def _merge_seeds(*seed_sets):
    parts = [np.asarray(s, dtype=float) for s in seed_sets if s is not None]
    if not parts:
        return None
    return np.unique(np.concatenate(parts))


def _r_envelope(t: float, cfg: QuadratureConfig) -> float:
    if t <= 0.0:
        return math.inf
    return math.sqrt(2.0 * cfg.tail_cutoff_exponent / t)


def _phase_split(t: float, params: ModelParams, lo: float, hi: float) -> float:
    """Radius in [lo, hi] where t * w crosses the averaging floor.

    Everything below the returned radius must be resolved; at and above it
    the phase t * w is certified to be at least the floor.  Returns hi when
    the floor is never reached (no averaging) and lo when the whole zone
    is already past it.
    """
    if t <= 0.0 or t * _w_scalar(hi, params) <= _PHASE_FLOOR:
        return hi
    if lo > 0.0 and t * _w_scalar(lo, params) >= _PHASE_FLOOR:
        return lo
    a, b = lo, hi
    while b - a > 1e-12 * max(b, 1.0):
        mid = 0.5 * (a + b)
        if t * _w_scalar(mid, params) < _PHASE_FLOOR:
            a = mid
        else:
            b = mid
    return b


def _osc_zone(
    exact_f,
    avg_f,
    t: float,
    lo: float,
    hi: float,
    params: ModelParams,
    cfg: QuadratureConfig,
    gap_seeds: bool = True,
) -> float:
    """One zone of an oscillatory integrand: resolved below the phase
    split, phase-averaged above it (averaged mode only).

    gap_seeds places extra breakpoints on the beat phase of the averaged
    integrand; callers whose averaged piece is beat-free (or who integrate
    above the root of the discriminant, where the beat frequency is not
    defined) turn it off.
    """
    if not (hi > lo):
        return 0.0
    split = hi if (cfg.mode == "resolved" or avg_f is None) else _phase_split(t, params, lo, hi)
    total = 0.0
    if split > lo:
        seeds = _phase_breakpoints(t, lo, split, params, cap=cfg.max_panels)
        total += integrate_adaptive(
            exact_f,
            lo,
            split,
            rel_tol=cfg.rel_tol,
            max_panels=cfg.max_panels,
            breakpoints=seeds,
        )
    if hi > split:
        geo = _geometric_breakpoints(split, hi)
        if gap_seeds:
            seeds = _merge_seeds(geo, _gap_breakpoints(t, split, hi, params, cap=cfg.max_panels))
        else:
            seeds = geo
        total += integrate_adaptive(
            avg_f,
            split,
            hi,
            rel_tol=cfg.rel_tol,
            max_panels=cfg.max_panels,
            breakpoints=seeds,
        )
    return total


def _tail_blocks(block_fn, lo: float, *, hi_clip: float, rel_tol: float, scale_hint: float) -> float:
    """Improper tail as doubling blocks with a geometric remainder check."""
    acc = 0.0
    prev_mag = math.inf
    s = lo
    for _ in range(_MAX_TAIL_BLOCKS):
        e = min(2.0 * s, hi_clip)
        if e <= s:
            return acc
        block = block_fn(s, e)
        acc += block
        mag = abs(block)
        thresh = rel_tol * max(abs(acc), scale_hint)
        if mag <= thresh:
            ratio = 0.0 if not (0.0 < prev_mag < math.inf) else mag / prev_mag
            if ratio < 0.9 and mag * ratio / (1.0 - ratio) <= thresh:
                return acc
        prev_mag = mag
        s = e
        if s >= hi_clip:
            return acc
    raise QuadratureError(
        f"radial tail from {lo:.3g} did not settle within {_MAX_TAIL_BLOCKS} doubling blocks"
    )


def _radial_weight(n: int):
    area = sphere_area(n)

    def wfun(r):
        return area * r ** (n - 1)

    return wfun


# ---------------------------------------------------------------------------
# Integrand factories.  Each returns a vectorized nonnegative function of r.
# ---------------------------------------------------------------------------


def _solution_sq_exact(t, data, params, thr, wfun):
    def f(r):
        v, _ = mode_arrays(t, r, data, params, thr)
        return wfun(r) * v * v

    return f


def _solution_sq_avg(t, data, params, thr, wfun):
    def f(r):
        u0 = np.asarray(data.u0_hat(r), dtype=float)
        u1 = np.asarray(data.u1_hat(r), dtype=float)
        a = 0.5 * r * r
        b = np.asarray(osc_b(r, params), dtype=float)
        amp = u1 + a * u0
        return wfun(r) * np.exp(-r * r * t) * 0.5 * (u0 * u0 + (amp / b) ** 2)

    return f


def _profile_sq_exact(t, p1, params, wfun):
    def f(r):
        w = np.sqrt(np.asarray(osc_freq_sq(r, params), dtype=float))
        phi = p1 * np.exp(-0.5 * r * r * t) * t * sinc(t * w)
        return wfun(r) * phi * phi

    return f


def _profile_sq_avg(t, p1, params, wfun):
    def f(r):
        w2 = np.asarray(osc_freq_sq(r, params), dtype=float)
        return wfun(r) * p1 * p1 * np.exp(-r * r * t) / (2.0 * w2)

    return f


def _error_sq_exact_osc(t, data, params, thr, wfun):
    # Stable resolved gap integrand for r < delta: the 1/b amplitude is
    # split through the inverse-frequency remainder and the data shift, so
    # no term suffers subtractive cancellation at small r or large t.
    p1 = data.P1

    def f(r):
        u0 = np.asarray(data.u0_hat(r), dtype=float)
        u1 = np.asarray(data.u1_hat(r), dtype=float)
        a = 0.5 * r * r
        w = np.sqrt(np.asarray(osc_freq_sq(r, params), dtype=float))
        b = np.asarray(osc_b(r, params), dtype=float)
        shift = u1 - p1
        rem = inverse_frequency_remainder(r, params, delta=thr.delta)
        gap = np.asarray(freq_gap(r, params), dtype=float)
        bt = b * t
        core = (
            u0 * np.cos(bt)
            + (shift + a * u0) * t * sinc(bt)
            + p1 * rem * np.sin(bt)
            - (2.0 * p1 / w) * np.cos(0.5 * (b + w) * t) * np.sin(0.5 * gap * t)
        )
        diff = np.exp(-a * t) * core
        return wfun(r) * diff * diff

    return f


def _error_sq_avg(t, data, params, thr, wfun):
    # Phase average of (u - phi)^2 over the fast b-phase, with the slow
    # gap phase psi = t (w - b) kept exactly: the squared amplitude is
    # (X - Z sin psi)^2 / 2 + ((Y - Z) + Z (1 - cos psi))^2 / 2 with
    # X = u0, Y = (u1 + a u0) / b, Z = P1 / w, and Y - Z expanded through
    # the remainder to stay cancellation-free.
    p1 = data.P1

    def f(r):
        u0 = np.asarray(data.u0_hat(r), dtype=float)
        u1 = np.asarray(data.u1_hat(r), dtype=float)
        a = 0.5 * r * r
        w = np.sqrt(np.asarray(osc_freq_sq(r, params), dtype=float))
        b = np.asarray(osc_b(r, params), dtype=float)
        shift = u1 - p1
        rem = inverse_frequency_remainder(r, params, delta=thr.delta)
        psi = t * np.asarray(freq_gap(r, params), dtype=float)
        z = p1 / w
        y_minus_z = p1 * rem + (shift + a * u0) / b
        e1 = u0 - z * np.sin(psi)
        e2 = y_minus_z + z * 2.0 * np.sin(0.5 * psi) ** 2
        return wfun(r) * np.exp(-r * r * t) * 0.5 * (e1 * e1 + e2 * e2)

    return f


def _error_sq_direct(t, data, params, thr, wfun):
    # Above delta the mode and the profile live on different scales, so the
    # plain difference is safe.
    p1 = data.P1

    def f(r):
        v, _ = mode_arrays(t, r, data, params, thr)
        w = np.sqrt(np.asarray(osc_freq_sq(r, params), dtype=float))
        phi = p1 * np.exp(-0.5 * r * r * t) * t * sinc(t * w)
        diff = v - phi
        return wfun(r) * diff * diff

    return f


def _energy_exact(t, data, params, thr, wfun):
    def f(r):
        v, dv = mode_arrays(t, r, data, params, thr)
        w2 = np.asarray(osc_freq_sq(r, params), dtype=float)
        return wfun(r) * 0.5 * (dv * dv + w2 * v * v)

    return f


def _energy_avg(t, data, params, thr, wfun):
    def f(r):
        u0 = np.asarray(data.u0_hat(r), dtype=float)
        u1 = np.asarray(data.u1_hat(r), dtype=float)
        a = 0.5 * r * r
        w2 = np.asarray(osc_freq_sq(r, params), dtype=float)
        b = np.asarray(osc_b(r, params), dtype=float)
        amp = u1 + a * u0
        big_q = a * u1 + w2 * u0
        kin = 0.5 * (u1 * u1 + (big_q / b) ** 2)
        pot = w2 * 0.5 * (u0 * u0 + (amp / b) ** 2)
        return wfun(r) * np.exp(-r * r * t) * 0.5 * (kin + pot)

    return f


# ---------------------------------------------------------------------------
# Norm drivers.
# ---------------------------------------------------------------------------


def _validate_time(t) -> float:
    t = float(t)
    if not (t >= 0.0 and math.isfinite(t)):
        raise ValueError(f"t must be a finite nonnegative real, got {t!r}")
    return t


def _high_zone_and_tail(
    exact_f,
    t: float,
    thr: ZoneThresholds,
    params: ModelParams,
    cfg: QuadratureConfig,
    *,
    oscillatory: bool,
    tail_clip: float,
    scale_hint: float,
):
    """Common handling of (delta, delta1] and the unbounded tail."""

    def piece(lo, hi):
        if not (hi > lo):
            return 0.0
        if oscillatory:
            seeds = _phase_breakpoints(t, lo, hi, params, cap=cfg.max_panels)
        else:
            seeds = np.linspace(lo, hi, 9)[1:-1]
        return integrate_adaptive(
            exact_f, lo, hi, rel_tol=cfg.rel_tol, max_panels=cfg.max_panels, breakpoints=seeds
        )

    high_mid = piece(thr.delta, min(thr.delta1, tail_clip))
    high_tail = 0.0
    if tail_clip > thr.delta1:
        high_tail = _tail_blocks(
            piece,
            thr.delta1,
            hi_clip=tail_clip,
            rel_tol=cfg.rel_tol,
            scale_hint=scale_hint + high_mid,
        )
    return high_mid, high_tail


def norm_sq_solution(
    t,
    data: FourierData,
    params: ModelParams,
    thr: ZoneThresholds,
    cfg: QuadratureConfig,
) -> NormBreakdown:
    """Squared L2 norm of the solution at time t, split by zone.

    High zones are dropped once t reaches tail_cutoff_exponent: the mode
    envelope there is e^(-2t) times data norms, below the clip level.
    """
    t = _validate_time(t)
    wfun = _radial_weight(params.n)
    r_env = _r_envelope(t, cfg)
    exact = _solution_sq_exact(t, data, params, thr, wfun)
    avg = _solution_sq_avg(t, data, params, thr, wfun)

    low = _osc_zone(exact, avg, t, 0.0, min(thr.delta0, r_env), params, cfg)
    middle = _osc_zone(exact, avg, t, thr.delta0, min(thr.delta, r_env), params, cfg)
    high_mid = high_tail = 0.0
    if t < cfg.tail_cutoff_exponent:
        high_mid, high_tail = _high_zone_and_tail(
            exact,
            t,
            thr,
            params,
            cfg,
            oscillatory=False,
            tail_clip=math.inf,
            scale_hint=low + middle,
        )
    return NormBreakdown(low, middle, high_mid, high_tail)


def norm_sq_profile(
    t,
    data: FourierData,
    params: ModelParams,
    thr: ZoneThresholds,
    cfg: QuadratureConfig,
) -> NormBreakdown:
    """Squared L2 norm of the long-time profile at time t, split by zone."""
    t = _validate_time(t)
    p1 = data.P1
    if t == 0.0 or p1 == 0.0:
        return _ZERO_BREAKDOWN
    wfun = _radial_weight(params.n)
    r_env = _r_envelope(t, cfg)
    exact = _profile_sq_exact(t, p1, params, wfun)
    avg = _profile_sq_avg(t, p1, params, wfun)

    low = _osc_zone(exact, avg, t, 0.0, min(thr.delta0, r_env), params, cfg)
    middle = _osc_zone(exact, avg, t, thr.delta0, min(thr.delta, r_env), params, cfg)
    high_mid = _osc_zone(
        exact, avg, t, thr.delta, min(thr.delta1, r_env), params, cfg, gap_seeds=False
    )
    high_tail = 0.0
    if r_env > thr.delta1:
        high_tail = _tail_blocks(
            lambda lo, hi: _osc_zone(exact, avg, t, lo, hi, params, cfg, gap_seeds=False),
            thr.delta1,
            hi_clip=r_env,
            rel_tol=cfg.rel_tol,
            scale_hint=low + middle + high_mid,
        )
    return NormBreakdown(low, middle, high_mid, high_tail)


def norm_sq_error(
    t,
    data: FourierData,
    params: ModelParams,
    thr: ZoneThresholds,
    cfg: QuadratureConfig,
) -> NormBreakdown:
    """Squared L2 norm of solution minus profile at time t, split by zone.

    Below delta the difference is evaluated in a regrouped form that stays
    accurate when the solution and the profile nearly coincide.  Above
    delta the direct difference is integrated; once t reaches
    tail_cutoff_exponent both factors there are below the clip level and
    the high zones are dropped.
    """
    t = _validate_time(t)
    wfun = _radial_weight(params.n)
    r_env = _r_envelope(t, cfg)
    exact = _error_sq_exact_osc(t, data, params, thr, wfun)
    avg = _error_sq_avg(t, data, params, thr, wfun)

    low = _osc_zone(exact, avg, t, 0.0, min(thr.delta0, r_env), params, cfg)
    middle = _osc_zone(exact, avg, t, thr.delta0, min(thr.delta, r_env), params, cfg)
    high_mid = high_tail = 0.0
    if t < cfg.tail_cutoff_exponent:
        direct = _error_sq_direct(t, data, params, thr, wfun)
        high_mid, high_tail = _high_zone_and_tail(
            direct,
            t,
            thr,
            params,
            cfg,
            oscillatory=True,
            tail_clip=math.inf,
            scale_hint=low + middle,
        )
    return NormBreakdown(low, middle, high_mid, high_tail)


def energy_total(
    t,
    data: FourierData,
    params: ModelParams,
    thr: ZoneThresholds,
    cfg: QuadratureConfig,
) -> float:
    """Total energy (kinetic plus potential) of the field at time t."""
    t = _validate_time(t)
    wfun = _radial_weight(params.n)
    r_env = _r_envelope(t, cfg)
    exact = _energy_exact(t, data, params, thr, wfun)
    avg = _energy_avg(t, data, params, thr, wfun)

    low = _osc_zone(exact, avg, t, 0.0, min(thr.delta0, r_env), params, cfg)
    middle = _osc_zone(exact, avg, t, thr.delta0, min(thr.delta, r_env), params, cfg)
    high_mid = high_tail = 0.0
    if t < cfg.tail_cutoff_exponent:
        high_mid, high_tail = _high_zone_and_tail(
            exact,
            t,
            thr,
            params,
            cfg,
            oscillatory=False,
            tail_clip=math.inf,
            scale_hint=low + middle,
        )
    return low + middle + high_mid + high_tail
