"""Closed-form evolution of radial Fourier modes and the long-time profile.

With roots -a +- i b (low zone), a double root -a (critical radius), or
-a +- d (high zone), the mode with initial value u0 and initial velocity u1
evolves as

    low:      e^(-a t) [u0 cos(b t) + (u1 + a u0) t sinc(b t)]
    critical: e^(-a t) [u0 + (u1 + a u0) t]
    high:     e^(-a t) [u0 cosh(d t) + (u1 + a u0) sinh(d t) / d]

where sinc(x) = sin(x)/x.  The high branch is evaluated in the overflow-free
split form with exponents -(a - d) t and -(a + d) t, both nonpositive, and
a - d computed as w^2 / (a + d) to dodge cancellation at large radii.

The long-time attractor of every low mode with u0 = 0 is the profile

    phi(t, r) = P1 e^(-r^2 t / 2) t sinc(t w(r)),   w^2 = r^2 + m^2 log(1 + r^(2 theta)),

where P1 is the integral of the initial velocity over space.  The gap
u - phi splits into three computable remainder pieces: an amplitude piece
(1/b replaced by 1/w), a data piece (u1_hat replaced by P1), and a phase
piece (sin(b t) replaced by sin(w t)) which is only available as an
envelope because its oscillation phase is not constructive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import hyp0f1

from .symbol_core import (
    CRITICAL_REL_WIDTH,
    ModelParams,
    ZoneThresholds,
    inverse_frequency_remainder,
    log_mass,
    osc_b,
    osc_d,
    osc_freq_sq,
)

__all__ = [
    "FourierData",
    "ModeValue",
    "gaussian_data",
    "ball_data",
    "mean_zero_data",
    "sinc",
    "sinch",
    "mode_arrays",
    "mode_solution",
    "asymptotic_profile",
    "freq_gap",
    "remainder_amplitude",
    "remainder_data",
    "remainder_phase_envelope",
    "decompose_data",
    "data_shift_bound_sweep",
    "mode_energy",
]

# Below this argument magnitude sin(x)/x and sinh(x)/x switch to their
# degree-4 Taylor polynomials; keeps relative error at the 1e-17 level.
SERIES_THRESHOLD = 1e-4


def sinc(x):
    """sin(x)/x with a series branch near zero, vectorized."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SERIES_THRESHOLD
    safe = np.where(small, 1.0, x)
    x2 = x * x
    return np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)


def sinch(x):
    """sinh(x)/x with a series branch near zero, vectorized.

    Callers keep |x| modest; the hyperbolic branch overflows past ~700 like
    sinh itself does.
    """
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SERIES_THRESHOLD
    safe = np.where(small, 1.0, x)
    x2 = x * x
    return np.where(small, 1.0 + x2 / 6.0 + x2 * x2 / 120.0, np.sinh(safe) / safe)


@dataclass(frozen=True)
class FourierData:
    """Radial frequency-space initial data.

    u0_hat and u1_hat evaluate the transforms of the initial value and the
    initial velocity at radius r (numpy-vectorized, real valued).  P1 is the
    space integral of the initial velocity, i.e. u1_hat(0).  l1_norm and
    l1_theta_norm are the plain and theta-weighted L1 norms of the initial
    velocity (documented upper bounds where no closed form exists); they
    scale the constants in every norm estimate.
    """

    u0_hat: Callable
    u1_hat: Callable
    P1: float
    l1_norm: float
    l1_theta_norm: float

    def __post_init__(self) -> None:
        if not (self.l1_norm >= abs(self.P1)):
            raise ValueError("l1_norm must dominate |P1|")
        if not (self.l1_theta_norm >= self.l1_norm):
            raise ValueError("l1_theta_norm must dominate l1_norm")


def _zero_profile(r):
    return np.zeros_like(np.asarray(r, dtype=float))


def _gaussian_theta_moment(n: int, theta: float, scale: float) -> float:
    # E|X|^theta for X standard n-dim Gaussian, then rescaled by the width.
    return scale**theta * 2.0 ** (theta / 2.0) * math.gamma((n + theta) / 2.0) / math.gamma(n / 2.0)


def gaussian_data(n: int, theta: float, scale: float = 1.0) -> FourierData:
    """Unit-mass Gaussian initial velocity of the given width, zero u0.

    The transform is exp(-(scale r)^2 / 2), so P1 = 1 and the L1 norm is 1
    by positivity.  The theta-weighted norm adds the exact Gaussian moment
    of |x|^theta.
    """
    if scale <= 0.0:
        raise ValueError("scale must be positive")
    s2 = scale * scale

    def u1_hat(r):
        r = np.asarray(r, dtype=float)
        return np.exp(-0.5 * s2 * r * r)

    return FourierData(
        u0_hat=_zero_profile,
        u1_hat=u1_hat,
        P1=1.0,
        l1_norm=1.0,
        l1_theta_norm=1.0 + _gaussian_theta_moment(n, theta, scale),
    )


def ball_data(n: int, theta: float, radius: float = 1.0) -> FourierData:
    """Normalized indicator of a ball as initial velocity, zero u0.

    The transform is the normalized Bessel kernel
    Gamma(n/2 + 1) (x/2)^(-n/2) J_(n/2)(x) at x = radius * r, evaluated via
    the confluent limit function 0F1.  P1 = 1, the L1 norm is 1 by
    positivity, and the theta moment of a uniform ball is
    n / (n + theta) * radius^theta, all exact.
    """
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    shape = n / 2.0 + 1.0

    def u1_hat(r):
        x = radius * np.asarray(r, dtype=float)
        return hyp0f1(shape, -0.25 * x * x)

    return FourierData(
        u0_hat=_zero_profile,
        u1_hat=u1_hat,
        P1=1.0,
        l1_norm=1.0,
        l1_theta_norm=1.0 + n / (n + theta) * radius**theta,
    )


def mean_zero_data(n: int, theta: float) -> FourierData:
    """Difference of two unit-mass Gaussians: mean-zero initial velocity.

    u1_hat(r) = exp(-r^2/2) - exp(-r^2), so P1 = 0.  The norm fields are
    triangle-inequality upper bounds; no closed form exists for the exact
    L1 norms of the signed difference.
    """

    def u1_hat(r):
        r = np.asarray(r, dtype=float)
        r2 = r * r
        return np.exp(-0.5 * r2) - np.exp(-r2)

    moment = _gaussian_theta_moment(n, theta, 1.0) + _gaussian_theta_moment(
        n, theta, math.sqrt(2.0)
    )
    return FourierData(
        u0_hat=_zero_profile,
        u1_hat=u1_hat,
        P1=0.0,
        l1_norm=2.0,
        l1_theta_norm=2.0 + moment,
    )


@dataclass(frozen=True)
class ModeValue:
    """Value and time derivative of one mode at one time."""

    value: float
    dvalue: float


def mode_arrays(t: float, r, data: FourierData, params: ModelParams, thr: ZoneThresholds):
    """Mode value and time derivative at time t, vectorized over radii.

    Returns (value, dvalue) arrays matching the shape of r.  Radii must be
    nonnegative; t must be nonnegative.  All branches share the universal
    derivative coefficient Q = a u1 + w^2 u0.
    """
    if not (t >= 0.0 and math.isfinite(t)):
        raise ValueError(f"t must be a finite nonnegative real, got {t!r}")
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r < 0.0):
        raise ValueError("radii must be nonnegative")

    u0 = np.asarray(data.u0_hat(r), dtype=float)
    u1 = np.asarray(data.u1_hat(r), dtype=float)
    a = 0.5 * r * r
    w2 = np.asarray(osc_freq_sq(r, params), dtype=float)
    amp = u1 + a * u0
    big_q = a * u1 + w2 * u0
    decay = np.exp(-a * t)

    value = np.empty_like(r)
    dvalue = np.empty_like(r)

    crit = np.abs(r - thr.delta) <= CRITICAL_REL_WIDTH * thr.delta
    low = (r < thr.delta) & ~crit
    high = ~(crit | low)

    if np.any(low):
        b = osc_b(r[low], params)
        bt = b * t
        cos_bt = np.cos(bt)
        tsinc = t * sinc(bt)
        value[low] = decay[low] * (u0[low] * cos_bt + amp[low] * tsinc)
        dvalue[low] = decay[low] * (u1[low] * cos_bt - big_q[low] * tsinc)

    if np.any(crit):
        value[crit] = decay[crit] * (u0[crit] + amp[crit] * t)
        dvalue[crit] = decay[crit] * (u1[crit] - a[crit] * amp[crit] * t)

    if np.any(high):
        d = np.asarray(osc_d(r[high], params), dtype=float)
        dt_arg = d * t
        series = dt_arg < SERIES_THRESHOLD
        expo = ~series
        val_h = np.empty_like(d)
        dval_h = np.empty_like(d)
        if np.any(series):
            ch = np.cosh(dt_arg[series])
            tsh = t * sinch(dt_arg[series])
            val_h[series] = decay[high][series] * (u0[high][series] * ch + amp[high][series] * tsh)
            dval_h[series] = decay[high][series] * (
                u1[high][series] * ch - big_q[high][series] * tsh
            )
        if np.any(expo):
            d_e = d[expo]
            a_e = a[high][expo]
            # a - d = w^2 / (a + d): exact cancellation-free slow rate.
            slow = w2[high][expo] / (a_e + d_e)
            e_minus = np.exp(-slow * t)
            e_plus = np.exp(-(a_e + d_e) * t)
            c_amp = amp[high][expo] / d_e
            c_q = big_q[high][expo] / d_e
            u0_e = u0[high][expo]
            u1_e = u1[high][expo]
            val_h[expo] = 0.5 * ((u0_e + c_amp) * e_minus + (u0_e - c_amp) * e_plus)
            dval_h[expo] = 0.5 * ((u1_e - c_q) * e_minus + (u1_e + c_q) * e_plus)
        value[high] = val_h
        dvalue[high] = dval_h

    return value, dvalue


def mode_solution(
    t: float, r: float, data: FourierData, params: ModelParams, thr: ZoneThresholds
) -> ModeValue:
    """Exact mode value and derivative at one (t, r) point."""
    if not (r >= 0.0 and math.isfinite(r)):
        raise ValueError(f"r must be a finite nonnegative real, got {r!r}")
    value, dvalue = mode_arrays(t, np.asarray([r]), data, params, thr)
    return ModeValue(value=float(value[0]), dvalue=float(dvalue[0]))


def _like_input(out, r_in):
    return float(out) if np.ndim(r_in) == 0 else out


def asymptotic_profile(t: float, r, p1: float, params: ModelParams):
    """Long-time profile phi(t, r) = P1 e^(-r^2 t / 2) t sinc(t w(r))."""
    if not (t >= 0.0 and math.isfinite(t)):
        raise ValueError(f"t must be a finite nonnegative real, got {t!r}")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0.0):
        raise ValueError("radii must be nonnegative")
    w = np.sqrt(osc_freq_sq(r_arr, params))
    out = p1 * np.exp(-0.5 * r_arr * r_arr * t) * t * sinc(t * w)
    return _like_input(out, r)


def _freq_pair(r, params: ModelParams):
    w2 = np.asarray(osc_freq_sq(r, params), dtype=float)
    w = np.sqrt(w2)
    b = np.asarray(osc_b(r, params), dtype=float)
    return w, b


def freq_gap(r, params: ModelParams):
    """w(r) - b(r) = r^4 / (4 (w + b)), cancellation-free, for r < delta."""
    r = np.asarray(r, dtype=float)
    w, b = _freq_pair(r, params)
    return 0.25 * r**4 / (w + b)


def remainder_amplitude(
    t: float, r, p1: float, params: ModelParams, thr: ZoneThresholds
):
    """Amplitude remainder P1 e^(-a t) R(r) sin(t w), defined for r < delta."""
    r_arr = np.asarray(r, dtype=float)
    rem = inverse_frequency_remainder(r_arr, params, delta=thr.delta)
    w = np.sqrt(osc_freq_sq(r_arr, params))
    out = p1 * np.exp(-0.5 * r_arr * r_arr * t) * rem * np.sin(t * w)
    return _like_input(out, r)


def remainder_data(
    t: float, r, data: FourierData, params: ModelParams, thr: ZoneThresholds
):
    """Data remainder (u1_hat(r) - P1) e^(-a t) sin(b t) / b, for r < delta.

    Shares the t * sinc(b t) evaluation path with mode_arrays so that for
    mean-zero data the identity u = remainder_data is exact in floating
    point as well.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr >= thr.delta):
        raise ValueError("remainder_data needs r < delta")
    shift, _ = decompose_data(data, r_arr)
    b = np.asarray(osc_b(r_arr, params), dtype=float)
    out = shift * np.exp(-0.5 * r_arr * r_arr * t) * t * sinc(b * t)
    return _like_input(out, r)


def remainder_phase_envelope(
    t: float, r, p1: float, params: ModelParams, thr: ZoneThresholds
):
    """Envelope of the phase remainder: t |P1| e^(-a t) (w - b) / b.

    The phase piece itself oscillates with a non-constructive phase; only
    this envelope is certified, via |sin(b t) - sin(w t)| <= t (w - b).
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr >= thr.delta) or np.any(r_arr <= 0.0):
        raise ValueError("remainder_phase_envelope needs 0 < r < delta")
    w, b = _freq_pair(r_arr, params)
    gap = 0.25 * r_arr**4 / (w + b)
    out = t * abs(p1) * np.exp(-0.5 * r_arr * r_arr * t) * gap / b
    return _like_input(out, r)


def decompose_data(data: FourierData, r):
    """Split u1_hat(r) = A(r) + P1 for radial real data.

    Returns (A, B) with B identically zero: the odd part of the transform
    vanishes for radial real initial velocity, so the split is real.
    """
    r_arr = np.asarray(r, dtype=float)
    shift = np.asarray(data.u1_hat(r_arr), dtype=float) - data.P1
    if np.ndim(r) == 0:
        return float(shift), 0.0
    return shift, np.zeros_like(shift)


def data_shift_bound_sweep(data: FourierData, theta: float, radii) -> float:
    """Empirical constant K in |A(r)| <= K r^theta l1_theta_norm.

    Sweeps the given radii and returns the largest observed ratio; a
    diagnostic for how tight the theta-moment bound is for this data.
    """
    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0.0):
        raise ValueError("sweep radii must be positive")
    shift, _ = decompose_data(data, radii)
    return float(np.max(np.abs(shift) / (radii**theta * data.l1_theta_norm)))


def mode_energy(
    t: float, r: float, data: FourierData, params: ModelParams, thr: ZoneThresholds
):
    """Per-mode energy and dissipation rate at time t.

    energy = (dvalue^2 + (r^2 + m^2 log(1 + r^(2 theta))) value^2) / 2,
    dissipation = r^2 dvalue^2, and d(energy)/dt = -dissipation along the
    evolution.
    """
    mode = mode_solution(t, r, data, params, thr)
    w2 = float(osc_freq_sq(r, params))
    energy = 0.5 * (mode.dvalue**2 + w2 * mode.value**2)
    dissipation = r**2 * mode.dvalue**2
    return energy, dissipation
