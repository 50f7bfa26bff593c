"""Decay/growth regime prediction, rate fitting, and lemma-level checks.

The long-time L2 norm of the solution falls into one of three regimes
depending on the dimension n and the log-mass exponent theta:

    power decay   n - 2 theta > 0, norm ~ t^(-(n - 2 theta)/4)
    power growth  n = 1 and theta > 1/2, norm ~ t^((2 theta - 1)/(2 theta))
    log growth    (n, theta) in {(1, 1/2), (2, 1)}, norm ~ sqrt(log t)

Empirical exponents come from least-squares fits against norm series built
by the quadrature layer.  Power and log fits report a residual_rms on the
same scale (root mean square of relative prediction error in value space),
so the two fit families can be ranked against each other.

The lemma checkers verify, at desk scale, the scalar inequalities that
drive the norm estimates: the erf sandwich c erf(1) <= erf(c t^-alpha)
t^alpha <= 2c/sqrt(pi), the logarithmic lower bound for the oscillatory
integral int e^(-w^2) sin^2(sqrt(t) w) / w dw, and the moment scaling
int_0^1 e^(-r^2 t) r^(n-1+k) dr ~ t^(-(n+k)/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .evolution import FourierData, sinc
from .quadrature import (
    QuadratureConfig,
    integrate_adaptive,
    norm_sq_error,
    norm_sq_profile,
    norm_sq_solution,
)
from .symbol_core import ModelParams, thresholds_for

__all__ = [
    "NormSeries",
    "RegimePrediction",
    "RateFit",
    "NormRateReport",
    "ProfileReport",
    "ErfCheckReport",
    "LogIntegralReport",
    "MomentScalingReport",
    "geometric_times",
    "build_norm_series",
    "predict_regime",
    "fit_power_law",
    "fit_log_law",
    "check_norm_rates",
    "check_profile_convergence",
    "gauss_erf",
    "erf_scaling_check",
    "log_integral_check",
    "moment_scaling_check",
]


def geometric_times(t0: float, t1: float, count: int) -> np.ndarray:
    """Strictly increasing geometric grid from t0 to t1 inclusive."""
    if not (0.0 < t0 < t1):
        raise ValueError(f"need 0 < t0 < t1, got t0 = {t0!r}, t1 = {t1!r}")
    if count < 2:
        raise ValueError(f"count must be at least 2, got {count!r}")
    return np.geomspace(t0, t1, count)


@dataclass(frozen=True, eq=False)
class NormSeries:
    """A sampled norm curve: strictly increasing times, positive values."""

    times: np.ndarray
    values: np.ndarray
    which: str = "solution"
    quad_mode: str = "averaged"

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        if times.ndim != 1 or times.shape != values.shape:
            raise ValueError("times and values must be matching 1-d arrays")
        if not np.all(np.diff(times) > 0.0):
            raise ValueError("times must be strictly increasing")
        if not np.all(values > 0.0):
            raise ValueError("values must be strictly positive (log fits need them)")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(values))):
            raise ValueError("times and values must be finite")


@dataclass(frozen=True)
class RegimePrediction:
    """Predicted long-time regime of the solution norm."""

    kind: str  # power-decay | power-growth | log-growth
    exponent: float | None


def predict_regime(n: int, theta: float) -> RegimePrediction:
    """Classify (n, theta) into decay, growth, or log growth."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    if not (0.0 < theta <= 1.0):
        raise ValueError(f"theta must lie in (0, 1], got {theta!r}")
    gap = n - 2.0 * theta
    if gap > 0.0:
        return RegimePrediction(kind="power-decay", exponent=-gap / 4.0)
    if gap == 0.0:
        return RegimePrediction(kind="log-growth", exponent=None)
    # gap < 0 forces n = 1 with theta > 1/2.
    return RegimePrediction(kind="power-growth", exponent=(2.0 * theta - 1.0) / (2.0 * theta))


@dataclass(frozen=True)
class RateFit:
    """A fitted rate law and its relative residual on the fit window."""

    slope: float
    intercept: float
    residual_rms: float
    window: tuple[float, float]


def _check_fit_window(series: NormSeries) -> None:
    if len(series.times) < 8:
        raise ValueError(f"need at least 8 samples to fit, got {len(series.times)}")
    span = series.times[-1] / series.times[0]
    if span < 1e3:
        raise ValueError(f"fit window must span at least 3 decades, got {span:.3g}x")


def _lsq_line(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept)


def fit_power_law(series: NormSeries) -> RateFit:
    """Least-squares line through (log t, log value); slope is the exponent."""
    _check_fit_window(series)
    logt = np.log(series.times)
    slope, intercept = _lsq_line(logt, np.log(series.values))
    predicted = np.exp(slope * logt + intercept)
    rel = (predicted - series.values) / series.values
    return RateFit(
        slope=slope,
        intercept=intercept,
        residual_rms=float(np.sqrt(np.mean(rel * rel))),
        window=(float(series.times[0]), float(series.times[-1])),
    )


def fit_log_law(series: NormSeries) -> RateFit:
    """Least-squares line through (log t, value^2): value^2 = slope log t + c.

    The residual is still measured on values (not squares) so it can be
    ranked directly against fit_power_law's residual.
    """
    _check_fit_window(series)
    logt = np.log(series.times)
    slope, intercept = _lsq_line(logt, series.values**2)
    predicted_sq = np.maximum(slope * logt + intercept, 0.0)
    rel = (np.sqrt(predicted_sq) - series.values) / series.values
    return RateFit(
        slope=slope,
        intercept=intercept,
        residual_rms=float(np.sqrt(np.mean(rel * rel))),
        window=(float(series.times[0]), float(series.times[-1])),
    )


_NORM_FUNCS = {
    "solution": norm_sq_solution,
    "profile": norm_sq_profile,
    "error": norm_sq_error,
}


def build_norm_series(
    params: ModelParams,
    data: FourierData,
    times,
    cfg: QuadratureConfig,
    which: str = "solution",
) -> NormSeries:
    """Sample sqrt of a squared-norm total over the given times."""
    if which not in _NORM_FUNCS:
        raise ValueError(f"which must be one of {sorted(_NORM_FUNCS)}, got {which!r}")
    norm_sq = _NORM_FUNCS[which]
    thr = thresholds_for(params)
    times = np.asarray(times, dtype=float)
    values = np.array(
        [math.sqrt(norm_sq(t, data, params, thr, cfg).total) for t in times]
    )
    return NormSeries(times=times, values=values, which=which, quad_mode=cfg.mode)


@dataclass(frozen=True)
class NormRateReport:
    """Fitted solution-norm law against the predicted regime."""

    prediction: RegimePrediction
    power_fit: RateFit
    log_fit: RateFit
    fitted_slope: float
    expected: float | None
    slope_error: float | None
    c_lower: float
    c_upper: float
    tolerance: float
    passed: bool


def _sandwich_constants(series: NormSeries, scale: np.ndarray, data: FourierData):
    ratios = series.values / scale
    c_lower = float(np.min(ratios)) / abs(data.P1)
    c_upper = float(np.max(ratios)) / (data.l1_norm + data.l1_theta_norm)
    return c_lower, c_upper


def check_norm_rates(
    params: ModelParams,
    data: FourierData,
    times,
    cfg: QuadratureConfig,
    tolerance: float = 0.03,
    exponent_override: float | None = None,
) -> NormRateReport:
    """Fit the solution norm and judge it against the predicted regime.

    Power regimes pass when the fitted exponent is within tolerance of the
    prediction (or of exponent_override, a hook for negative controls).
    The log regime passes when the log-law slope is positive and its
    residual is at least five times smaller than the power fit's.  The
    two-sided constants divide out the predicted rate: c_lower scales the
    minimum by 1/|P1|, c_upper the maximum by the L1 norms.
    """
    if data.P1 == 0.0:
        raise ValueError("rate checks need P1 != 0; the lower bound is vacuous otherwise")
    prediction = predict_regime(params.n, params.theta)
    series = build_norm_series(params, data, times, cfg, which="solution")
    power = fit_power_law(series)
    log_fit = fit_log_law(series)

    if prediction.kind == "log-growth":
        scale = np.sqrt(np.log(series.times))
        c_lower, c_upper = _sandwich_constants(series, scale, data)
        passed = log_fit.slope > 0.0 and 5.0 * log_fit.residual_rms <= power.residual_rms
        return NormRateReport(
            prediction=prediction,
            power_fit=power,
            log_fit=log_fit,
            fitted_slope=log_fit.slope,
            expected=None,
            slope_error=None,
            c_lower=c_lower,
            c_upper=c_upper,
            tolerance=tolerance,
            passed=passed,
        )

    expected = prediction.exponent if exponent_override is None else exponent_override
    scale = series.times**prediction.exponent
    c_lower, c_upper = _sandwich_constants(series, scale, data)
    slope_error = abs(power.slope - expected)
    return NormRateReport(
        prediction=prediction,
        power_fit=power,
        log_fit=log_fit,
        fitted_slope=power.slope,
        expected=expected,
        slope_error=slope_error,
        c_lower=c_lower,
        c_upper=c_upper,
        tolerance=tolerance,
        passed=slope_error <= tolerance,
    )


@dataclass(frozen=True)
class ProfileReport:
    """Convergence of the solution to the long-time profile."""

    error_fit: RateFit
    slope_bound: float
    times: np.ndarray
    ratio_to_solution: np.ndarray
    ratio_to_profile: np.ndarray
    tail_decreasing: bool
    passed: bool


def check_profile_convergence(
    params: ModelParams,
    data: FourierData,
    times,
    cfg: QuadratureConfig,
    slope_slack: float = 0.05,
    tail_points: int = 10,
) -> ProfileReport:
    """Check that the profile absorbs the solution at the predicted rate.

    Requires zero initial value and P1 != 0.  Passes when the fitted slope
    of the error norm is at most -n/4 + slope_slack and the ratio
    error/solution strictly decreases over the last tail_points samples.
    """
    probe = np.array([0.37, 1.3, 2.9])
    if np.any(np.asarray(data.u0_hat(probe), dtype=float) != 0.0):
        raise ValueError("profile convergence check needs identically zero initial value")
    if data.P1 == 0.0:
        raise ValueError("profile convergence check needs P1 != 0")
    sol = build_norm_series(params, data, times, cfg, which="solution")
    err = build_norm_series(params, data, times, cfg, which="error")
    phi = build_norm_series(params, data, times, cfg, which="profile")

    error_fit = fit_power_law(err)
    slope_bound = -params.n / 4.0 + slope_slack
    ratio_u = err.values / sol.values
    ratio_phi = err.values / phi.values
    tail = ratio_u[-tail_points:]
    tail_decreasing = bool(np.all(np.diff(tail) < 0.0))
    return ProfileReport(
        error_fit=error_fit,
        slope_bound=slope_bound,
        times=np.asarray(times, dtype=float),
        ratio_to_solution=ratio_u,
        ratio_to_profile=ratio_phi,
        tail_decreasing=tail_decreasing,
        passed=(error_fit.slope <= slope_bound) and tail_decreasing,
    )


# ---------------------------------------------------------------------------
# Self-contained Gauss error function.
# ---------------------------------------------------------------------------

_ERF_SERIES_CUT = 2.5
_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


def _erf_series(x: float) -> float:
    # Alternating Maclaurin series; for |x| <= 2.5 the largest term is
    # about e^(x^2) times the result, costing at most 3 digits.
    total = 0.0
    term = x
    k = 0
    while abs(term) > 1e-18 * max(abs(total), 1e-300):
        total += term / (2 * k + 1)
        k += 1
        term *= -x * x / k
        if k > 200:
            break
    return _TWO_OVER_SQRT_PI * total


def _erfc_continued_fraction(x: float) -> float:
    # erfc(x) = e^(-x^2) / (sqrt(pi) g(x)) with
    # g(x) = x + (1/2)/(x + 1/(x + (3/2)/(x + 2/(x + ...)))),
    # evaluated by the modified Lentz algorithm.
    tiny = 1e-300
    f = x if x != 0.0 else tiny
    c = f
    d = 0.0
    for j in range(1, 300):
        a = 0.5 * j
        d = x + a * d
        d = tiny if d == 0.0 else d
        c = x + a / c
        c = tiny if c == 0.0 else c
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-17:
            break
    return math.exp(-x * x) / (math.sqrt(math.pi) * f)


def gauss_erf(x: float) -> float:
    """Gauss error function, series below 2.5 and continued fraction above.

    Self-contained on purpose: it cross-validates the library erf used
    implicitly elsewhere.  Absolute accuracy is better than 1e-13.
    """
    if math.isnan(x):
        raise ValueError("gauss_erf needs a real argument")
    ax = abs(x)
    if ax <= _ERF_SERIES_CUT:
        val = _erf_series(ax)
    else:
        val = 1.0 - _erfc_continued_fraction(ax)
    return val if x >= 0.0 else -val


@dataclass(frozen=True)
class ErfCheckReport:
    """Pointwise sandwich c erf(1) <= erf(c t^-alpha) t^alpha <= 2c/sqrt(pi)."""

    c: float
    alpha: float
    times: np.ndarray
    values: np.ndarray
    lower_ref: float
    upper_ref: float
    lower_margin: float
    upper_margin: float
    passed: bool


def erf_scaling_check(c: float, alpha: float, times) -> ErfCheckReport:
    """Verify the erf sandwich on a time grid with t >= c^(1/alpha)."""
    if c <= 0.0 or alpha <= 0.0:
        raise ValueError("need c > 0 and alpha > 0")
    times = np.asarray(times, dtype=float)
    floor = c ** (1.0 / alpha)
    if np.any(times < floor * (1.0 - 1e-12)):
        raise ValueError(
            f"grid points below c^(1/alpha) = {floor:.6g} are outside the lemma's range"
        )
    values = np.array([gauss_erf(c * t ** (-alpha)) * t**alpha for t in times])
    lower_ref = c * gauss_erf(1.0)
    upper_ref = 2.0 * c / math.sqrt(math.pi)
    slack = 1e-12 * c
    lower_margin = float(np.min(values - lower_ref))
    upper_margin = float(np.min(upper_ref - values))
    return ErfCheckReport(
        c=c,
        alpha=alpha,
        times=times,
        values=values,
        lower_ref=lower_ref,
        upper_ref=upper_ref,
        lower_margin=lower_margin,
        upper_margin=upper_margin,
        passed=(lower_margin >= -slack) and (upper_margin >= -slack),
    )


_LOG_INTEGRAL_UPPER = 7.0


def _log_integral_value(t: float) -> float:
    # int_0^inf e^(-w^2) sin^2(sqrt(t) w) / w dw with the integrand written
    # as e^(-w^2) t w sinc^2(sqrt(t) w), which is finite at w = 0.  Beyond
    # w = 7 the envelope e^(-49) is far below any tolerance in use.
    root_t = math.sqrt(t)

    def f(w):
        s = sinc(root_t * w)
        return np.exp(-w * w) * t * w * s * s

    step = 0.5 * math.pi / root_t
    seeds = np.arange(step, _LOG_INTEGRAL_UPPER, step)
    return integrate_adaptive(
        f,
        0.0,
        _LOG_INTEGRAL_UPPER,
        rel_tol=1e-9,
        max_panels=600_000,
        breakpoints=seeds,
    )


def log_lower_bound(t: float) -> float:
    """Proof-level lower envelope (1/4) e^-1 ((1/2) log t - log(pi/4))."""
    return 0.25 * math.exp(-1.0) * (0.5 * math.log(t) - math.log(0.25 * math.pi))


@dataclass(frozen=True)
class LogIntegralReport:
    """Oscillatory log integral against its logarithmic lower bound."""

    times: np.ndarray
    values: np.ndarray
    lower_bounds: np.ndarray
    margins: np.ndarray
    monotone: bool
    max_ratio_to_log: float
    passed: bool


def log_integral_check(times) -> LogIntegralReport:
    """Check I(t) >= (1/4) e^-1 ((1/2) log t - log(pi/4)) on the grid."""
    times = np.asarray(times, dtype=float)
    if np.any(times < 10.0):
        raise ValueError("log integral check needs t >= 10")
    values = np.array([_log_integral_value(t) for t in times])
    lower = np.array([log_lower_bound(t) for t in times])
    margins = values - lower
    order = np.argsort(times)
    monotone = bool(np.all(np.diff(values[order]) > 0.0))
    ratio = float(np.max(values / np.log(times)))
    return LogIntegralReport(
        times=times,
        values=values,
        lower_bounds=lower,
        margins=margins,
        monotone=monotone,
        max_ratio_to_log=ratio,
        passed=bool(np.all(margins >= 0.0)),
    )


@dataclass(frozen=True)
class MomentScalingReport:
    """Fitted exponent of int_0^1 e^(-r^2 t) r^(n-1+k) dr."""

    n: int
    k: int
    slope: float
    expected: float
    tolerance: float
    passed: bool


def moment_scaling_check(
    n: int = 3, k: int = 1, times=None, tolerance: float = 0.02
) -> MomentScalingReport:
    """Check the weighted-moment decay exponent -(n + k)/2 by regression."""
    if times is None:
        times = np.geomspace(1e2, 1e6, 9)
    times = np.asarray(times, dtype=float)

    def moment(t: float) -> float:
        def f(r):
            return np.exp(-r * r * t) * r ** (n - 1 + k)

        seeds = None
        scale = 1.0 / math.sqrt(t)
        if scale < 0.5:
            ratios = np.geomspace(1e-2 * scale, 1.0, 24)
            seeds = ratios[1:-1]
        return integrate_adaptive(f, 0.0, 1.0, rel_tol=1e-10, breakpoints=seeds)

    values = np.array([moment(t) for t in times])
    series = NormSeries(times=times, values=values, which="moment")
    fit = fit_power_law(series)
    expected = -(n + k) / 2.0
    return MomentScalingReport(
        n=n,
        k=k,
        slope=fit.slope,
        expected=expected,
        tolerance=tolerance,
        passed=abs(fit.slope - expected) <= tolerance,
    )
