"""Frequency-symbol structure of the damped wave family.

Each radial frequency r = |xi| evolves under a constant-coefficient second
order ODE

    v'' + r^2 v' + (r^2 + m^2 log(1 + r^(2 theta))) v = 0,

so the character of a mode is set by the discriminant

    f(r) = r^4 - 4 r^2 - 4 m^2 log(1 + r^(2 theta)).

f is negative near the origin (oscillatory, underdamped modes) and positive
for large r (overdamped modes), with a single sign change at a radius
delta > 2.  This module owns the model parameters, the discriminant, the
zone thresholds built from delta, and the characteristic-root data that the
evolution and quadrature layers consume.

All radial helpers accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "ZoneThresholds",
    "CharRoots",
    "log_mass",
    "discriminant",
    "osc_freq_sq",
    "osc_b",
    "osc_d",
    "find_delta",
    "select_thresholds",
    "thresholds_for",
    "char_roots",
    "inverse_frequency_remainder",
]

# Bisection for delta stops when the bracket is this narrow (relative).
_BISECT_REL_WIDTH = 1e-13
# |f(delta)| must come out below this times max(1, delta^4).
_F_RESIDUAL_REL = 1e-12
# Radii within this relative distance of delta are treated as critically
# damped (double root); keeps the b, d formulas away from a 0/0 corner.
CRITICAL_REL_WIDTH = 1e-9
# Radicands that dip negative by less than this relative amount are
# rounded up to zero; anything worse means the caller picked the wrong zone.
_CLAMP_REL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Model parameters: space dimension n, log exponent theta, mass m."""

    n: int
    theta: float
    m: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be an integer >= 1, got {self.n!r}")
        if not (0.0 < self.theta <= 1.0):
            raise ValueError(f"theta must lie in (0, 1], got {self.theta!r}")
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise ValueError(f"m must be a finite positive real, got {self.m!r}")


def log_mass(r, params: ModelParams):
    """Mass-term symbol m^2 log(1 + r^(2 theta)), vectorized in r."""
    r = np.asarray(r, dtype=float)
    return params.m**2 * np.log1p(r ** (2.0 * params.theta))


def discriminant(r, params: ModelParams):
    """f(r) = r^4 - 4 r^2 - 4 m^2 log(1 + r^(2 theta))."""
    r = np.asarray(r, dtype=float)
    return r**4 - 4.0 * r**2 - 4.0 * log_mass(r, params)


def osc_freq_sq(r, params: ModelParams):
    """Squared profile frequency w(r)^2 = r^2 + m^2 log(1 + r^(2 theta))."""
    r = np.asarray(r, dtype=float)
    return r**2 + log_mass(r, params)


def _clamped_sqrt(radicand, scale):
    """sqrt of a radicand that is nonnegative up to roundoff.

    Values in [-_CLAMP_REL * scale, 0) are rounded to zero; more negative
    values indicate a zone mix-up and raise.
    """
    radicand = np.asarray(radicand, dtype=float)
    scale = np.asarray(scale, dtype=float)
    floor = -_CLAMP_REL * np.maximum(1.0, scale)
    if np.any(radicand < floor):
        worst = float(np.min(radicand / np.maximum(1.0, scale)))
        raise ValueError(
            f"radicand negative beyond roundoff tolerance (relative {worst:.3e}); "
            "radius is on the wrong side of delta for this root branch"
        )
    return np.sqrt(np.maximum(radicand, 0.0))


def osc_b(r, params: ModelParams):
    """Oscillation rate b(r) = sqrt(-f(r)) / 2 for radii below delta."""
    r = np.asarray(r, dtype=float)
    return _clamped_sqrt(-discriminant(r, params), r**4) / 2.0


def osc_d(r, params: ModelParams):
    """Root separation d(r) = sqrt(f(r)) / 2 for radii above delta."""
    r = np.asarray(r, dtype=float)
    return _clamped_sqrt(discriminant(r, params), r**4) / 2.0


def find_delta(params: ModelParams) -> float:
    """Locate the unique radius delta > 2 where the discriminant vanishes.

    f(2) = -4 m^2 log(1 + 2^(2 theta)) < 0 for every admissible parameter
    set, and f -> +inf, so [2, r_hi] brackets the root once f(r_hi) > 0.
    At any crossing the quartic part outgrows the log part, which makes the
    crossing unique; plain bisection is therefore safe.
    """
    lo, hi = 2.0, 4.0
    doublings = 0
    while discriminant(hi, params) <= 0.0:
        hi *= 2.0
        doublings += 1
        if doublings > 60:
            raise RuntimeError(
                f"could not bracket delta below r = {hi:.3e}; parameters look pathological"
            )
    while (hi - lo) > _BISECT_REL_WIDTH * lo:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if discriminant(mid, params) < 0.0:
            lo = mid
        else:
            hi = mid
    delta = 0.5 * (lo + hi)
    residual = abs(float(discriminant(delta, params)))
    if residual > _F_RESIDUAL_REL * max(1.0, delta**4):
        raise RuntimeError(
            f"bisection for delta stalled: |f(delta)| = {residual:.3e} at delta = {delta!r}"
        )
    return delta


@dataclass(frozen=True)
class ZoneThresholds:
    """Frequency-zone boundaries and the exponential rates they induce.

    Zones: low (0, delta0], middle (delta0, delta], high-mid (delta, delta1],
    high-tail (delta1, inf).  alpha and beta are the exponential decay rates
    of the squared norm contributions of the two high zones.
    """

    delta: float
    delta0: float
    delta1: float
    alpha: float
    beta: float


def select_thresholds(params: ModelParams, delta: float) -> ZoneThresholds:
    """Build zone thresholds and high-frequency rates from delta."""
    if not (delta > 2.0):
        raise ValueError(f"delta must exceed 2, got {delta!r}")
    delta0 = min(1.0, delta / 2.0)
    delta1 = delta + 1.0
    radicand = (
        1.0
        - 4.0 / delta1**2
        - 4.0 * params.m**2 * math.log1p(delta1 ** (2.0 * params.theta)) / delta1**4
    )
    if not (0.0 < radicand < 1.0):
        raise RuntimeError(
            f"high-zone radicand {radicand!r} outside (0, 1); inconsistent delta"
        )
    shrink = 1.0 - math.sqrt(radicand)
    alpha = delta**2 * shrink
    beta = 0.5 * delta1**2 * shrink
    return ZoneThresholds(delta=delta, delta0=delta0, delta1=delta1, alpha=alpha, beta=beta)


def thresholds_for(params: ModelParams) -> ZoneThresholds:
    """Convenience wrapper: find delta, then build the thresholds."""
    return select_thresholds(params, find_delta(params))


@dataclass(frozen=True)
class CharRoots:
    """Characteristic-root data for one radius.

    a is the common decay rate r^2 / 2.  In zone "low-complex" the roots are
    -a +- i b and osc = b; in zone "high-real" they are -a +- d and osc = d;
    in zone "critical" the root is double and osc = 0.
    """

    a: float
    zone: str
    osc: float


def char_roots(r: float, params: ModelParams, thr: ZoneThresholds) -> CharRoots:
    """Classify radius r against delta and return its root data."""
    if not (r > 0.0 and math.isfinite(r)):
        raise ValueError(f"r must be a finite positive real, got {r!r}")
    a = 0.5 * r**2
    if abs(r - thr.delta) <= CRITICAL_REL_WIDTH * thr.delta:
        return CharRoots(a=a, zone="critical", osc=0.0)
    if r < thr.delta:
        return CharRoots(a=a, zone="low-complex", osc=float(osc_b(r, params)))
    return CharRoots(a=a, zone="high-real", osc=float(osc_d(r, params)))


def inverse_frequency_remainder(r, params: ModelParams, delta: float | None = None):
    """Remainder R(r) in the identity 1/b(r) = 1/w(r) + R(r).

    Closed form

        R(r) = r^4 / (2 b w^2 (2 + sqrt(4 - r^4 / w^2)))

    with w^2 = r^2 + m^2 log(1 + r^(2 theta)).  Defined for 0 < r < delta;
    R > 0 there and R = O(r^(4 - 3 theta)) near the origin.
    """
    r_arr = np.asarray(r, dtype=float)
    if delta is None:
        delta = find_delta(params)
    if np.any(r_arr <= 0.0) or np.any(r_arr >= delta):
        raise ValueError("inverse_frequency_remainder needs 0 < r < delta")
    w2 = osc_freq_sq(r_arr, params)
    b = osc_b(r_arr, params)
    inner = _clamped_sqrt(4.0 - r_arr**4 / w2, np.ones_like(w2))
    out = r_arr**4 / (2.0 * b * w2 * (2.0 + inner))
    return out if isinstance(r, np.ndarray) else float(out)
