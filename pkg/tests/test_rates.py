import math

import numpy as np
import pytest

from logwave import (
    FourierData,
    ModelParams,
    NormSeries,
    QuadratureConfig,
    build_norm_series,
    check_norm_rates,
    check_profile_convergence,
    erf_scaling_check,
    fit_log_law,
    fit_power_law,
    gaussian_data,
    gauss_erf,
    geometric_times,
    log_integral_check,
    mean_zero_data,
    moment_scaling_check,
    predict_regime,
)
from logwave.rates import log_lower_bound

# ---------------------------------------------------------------------------
# Regime classification.
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "n, theta, kind, exponent",
    [
        (3, 1.0, "power-decay", -0.25),
        (4, 1.0, "power-decay", -0.5),
        (2, 0.5, "power-decay", -0.25),
        (1, 0.25, "power-decay", -0.125),
        (2, 1.0, "log-growth", None),
        (1, 0.5, "log-growth", None),
        (1, 0.75, "power-growth", 1.0 / 3.0),
        (1, 1.0, "power-growth", 0.5),
    ],
)
def test_regime_table(n, theta, kind, exponent):
    got = predict_regime(n, theta)
    assert got.kind == kind
    if exponent is None:
        assert got.exponent is None
    else:
        assert got.exponent == pytest.approx(exponent, rel=1e-15)


def test_regime_rejects_bad_parameters():
    for n, theta in ((0, 1.0), (2.5, 1.0), (2, 0.0), (2, 1.5)):
        with pytest.raises(ValueError):
            predict_regime(n, theta)


# ---------------------------------------------------------------------------
# Series containers and fits.
# ---------------------------------------------------------------------------


def test_geometric_times():
    times = geometric_times(1.0, 1e4, 9)
    assert times[0] == 1.0 and times[-1] == pytest.approx(1e4, rel=1e-14)
    assert len(times) == 9 and np.all(np.diff(times) > 0.0)
    for bad in ((1.0, 1.0, 5), (-1.0, 2.0, 5), (1.0, 10.0, 1)):
        with pytest.raises(ValueError):
            geometric_times(*bad)


def test_norm_series_validation():
    t = np.array([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        NormSeries(times=np.array([1.0, 2.0, 2.0]), values=np.ones(3))
    with pytest.raises(ValueError):
        NormSeries(times=t, values=np.array([1.0, 0.0, 1.0]))
    with pytest.raises(ValueError):
        NormSeries(times=t, values=np.ones(4))
    with pytest.raises(ValueError):
        NormSeries(times=t, values=np.array([1.0, math.inf, 1.0]))


def test_power_fit_recovers_exact_law():
    times = np.geomspace(1.0, 1e4, 12)
    fit = fit_power_law(NormSeries(times=times, values=3.0 * times**-0.25))
    assert fit.slope == pytest.approx(-0.25, abs=1e-12)
    assert fit.intercept == pytest.approx(math.log(3.0), abs=1e-12)
    assert fit.residual_rms < 1e-13
    assert fit.window == (1.0, pytest.approx(1e4, rel=1e-14))


def test_power_fit_constant_series():
    times = np.geomspace(1.0, 1e4, 10)
    fit = fit_power_law(NormSeries(times=times, values=np.full(10, 2.7)))
    assert fit.slope == pytest.approx(0.0, abs=1e-14)


def test_fit_window_requirements():
    with pytest.raises(ValueError, match="8 samples"):
        fit_power_law(NormSeries(times=np.geomspace(1, 1e4, 7), values=np.ones(7)))
    with pytest.raises(ValueError, match="decades"):
        fit_power_law(NormSeries(times=np.geomspace(1, 100, 10), values=np.ones(10)))


def test_power_fit_sharpens_on_late_window():
    # A curved law t^(1/3) (1 + 0.1 t^(-1/2)): the late window must fit
    # the limiting exponent more closely than the early one.
    def values(times):
        return times ** (1.0 / 3.0) * (1.0 + 0.1 / np.sqrt(times))

    early = np.geomspace(1.0, 1e4, 10)
    late = np.geomspace(1e4, 1e8, 10)
    fit_early = fit_power_law(NormSeries(times=early, values=values(early)))
    fit_late = fit_power_law(NormSeries(times=late, values=values(late)))
    assert abs(fit_late.slope - 1.0 / 3.0) < abs(fit_early.slope - 1.0 / 3.0)
    assert abs(fit_late.slope - 1.0 / 3.0) < 1e-3


def test_log_fit_recovers_exact_law():
    times = np.geomspace(10.0, 1e6, 14)
    fit = fit_log_law(NormSeries(times=times, values=np.sqrt(2.0 * np.log(times) + 5.0)))
    assert fit.slope == pytest.approx(2.0, abs=1e-10)
    assert fit.intercept == pytest.approx(5.0, abs=1e-9)
    assert fit.residual_rms < 1e-12


def test_log_fit_rejects_power_growth_shape():
    times = np.geomspace(10.0, 1e6, 14)
    fit = fit_log_law(NormSeries(times=times, values=times**0.3))
    assert fit.residual_rms > 0.1


def test_fit_ranking_separates_shapes():
    times = np.geomspace(1e2, 1e7, 16)
    log_series = NormSeries(times=times, values=np.sqrt(np.log(times)))
    power_series = NormSeries(times=times, values=times**-0.25)
    assert fit_log_law(log_series).residual_rms < fit_power_law(log_series).residual_rms
    assert fit_power_law(power_series).residual_rms < fit_log_law(power_series).residual_rms


# ---------------------------------------------------------------------------
# Norm-rate reports on real quadrature series.
# ---------------------------------------------------------------------------


def test_norm_rate_report_reference_config(averaged_cfg):
    params = ModelParams(n=3, theta=1.0, m=1.0)
    data = gaussian_data(3, 1.0)
    times = geometric_times(1e4, 1e8, 10)
    report = check_norm_rates(params, data, times, averaged_cfg)
    assert report.prediction.kind == "power-decay"
    assert report.passed
    assert report.slope_error is not None and report.slope_error < 0.01
    assert report.c_lower > 0.0 and report.c_upper > 0.0
    assert math.isfinite(report.c_lower) and math.isfinite(report.c_upper)


def test_norm_rate_override_is_a_negative_control(averaged_cfg):
    params = ModelParams(n=3, theta=1.0, m=1.0)
    data = gaussian_data(3, 1.0)
    times = geometric_times(1e4, 1e8, 10)
    report = check_norm_rates(params, data, times, averaged_cfg, exponent_override=-0.5)
    assert report.expected == -0.5
    assert not report.passed


def test_norm_rate_requires_moment(averaged_cfg):
    with pytest.raises(ValueError, match="P1"):
        check_norm_rates(
            ModelParams(n=3, theta=1.0, m=1.0),
            mean_zero_data(3, 1.0),
            geometric_times(1e4, 1e8, 10),
            averaged_cfg,
        )


def test_build_norm_series_rejects_unknown_kind(averaged_cfg):
    with pytest.raises(ValueError, match="which"):
        build_norm_series(
            ModelParams(n=3, theta=1.0, m=1.0),
            gaussian_data(3, 1.0),
            np.array([1.0, 2.0]),
            averaged_cfg,
            which="momentum",
        )


def test_profile_convergence_reference_config(averaged_cfg):
    params = ModelParams(n=3, theta=1.0, m=1.0)
    data = gaussian_data(3, 1.0)
    times = geometric_times(1e4, 1e8, 12)
    report = check_profile_convergence(params, data, times, cfg=averaged_cfg)
    assert report.passed
    assert report.error_fit.slope <= report.slope_bound
    assert report.slope_bound == pytest.approx(-0.70, abs=1e-12)
    assert np.all(report.ratio_to_solution < 1.0)
    assert report.tail_decreasing


def test_profile_convergence_requirements(averaged_cfg):
    times = geometric_times(1e4, 1e8, 12)
    params = ModelParams(n=3, theta=1.0, m=1.0)
    with pytest.raises(ValueError, match="P1"):
        check_profile_convergence(params, mean_zero_data(3, 1.0), times, cfg=averaged_cfg)
    bumpy = FourierData(
        u0_hat=lambda r: np.exp(-np.asarray(r, dtype=float) ** 2),
        u1_hat=lambda r: np.exp(-np.asarray(r, dtype=float) ** 2 / 2.0),
        P1=1.0,
        l1_norm=1.0,
        l1_theta_norm=2.0,
    )
    with pytest.raises(ValueError, match="initial value"):
        check_profile_convergence(params, bumpy, times, cfg=averaged_cfg)


# ---------------------------------------------------------------------------
# Self-contained error function and the closed-form scaling checks.
# ---------------------------------------------------------------------------

ERF_AT_1 = 0.8427007929497149
ERF_AT_2 = 0.9953222650189527


def test_gauss_erf_reference_values():
    assert gauss_erf(0.0) == 0.0
    assert gauss_erf(1.0) == pytest.approx(ERF_AT_1, abs=1e-13)
    assert gauss_erf(2.0) == pytest.approx(ERF_AT_2, abs=1e-13)
    assert gauss_erf(8.0) == pytest.approx(1.0, abs=1e-15)
    assert gauss_erf(-1.0) == -gauss_erf(1.0)


def test_gauss_erf_matches_libm_everywhere():
    xs = np.linspace(-6.0, 6.0, 241)
    worst = max(abs(gauss_erf(float(x)) - math.erf(float(x))) for x in xs)
    assert worst < 1e-13, worst


def test_gauss_erf_rejects_nan():
    with pytest.raises(ValueError):
        gauss_erf(math.nan)


@pytest.mark.parametrize("c, alpha", [(1.0, 0.5), (2.0, 1.0), (0.5, 1.0 / 3.0)])
def test_erf_sandwich(c, alpha):
    floor = c ** (1.0 / alpha)
    times = floor * np.geomspace(1.0, 1e5, 11)
    report = erf_scaling_check(c, alpha, times)
    assert report.passed
    assert report.lower_ref == pytest.approx(c * ERF_AT_1, abs=1e-13)
    assert report.upper_ref == pytest.approx(2.0 * c / math.sqrt(math.pi), rel=1e-15)
    # The scaled value climbs from the erf(1) end toward the linear slope.
    assert np.all(np.diff(report.values) > 0.0)


def test_erf_sandwich_domain():
    with pytest.raises(ValueError):
        erf_scaling_check(-1.0, 0.5, [10.0])
    with pytest.raises(ValueError, match="outside"):
        erf_scaling_check(1.0, 0.5, [0.5, 10.0])


def test_log_integral_growth():
    times = 10.0 ** np.arange(2, 9)
    report = log_integral_check(times)
    assert report.passed and report.monotone
    assert np.all(report.margins > 1.4)
    assert report.max_ratio_to_log < 0.5
    # Frozen spot values for regression.
    assert report.values[0] == pytest.approx(1.640911, abs=1e-5)
    assert report.values[2] == pytest.approx(2.793450, abs=1e-5)
    assert log_lower_bound(1e4) == pytest.approx(0.4457535, abs=1e-6)


def test_log_integral_domain():
    with pytest.raises(ValueError):
        log_integral_check([5.0, 100.0])


def test_moment_scaling():
    report = moment_scaling_check(n=3, k=1)
    assert report.passed
    assert report.expected == -2.0
    assert report.slope == pytest.approx(-2.0, abs=2e-3)
    report2 = moment_scaling_check(n=1, k=2)
    assert report2.passed and report2.expected == -1.5


# ---------------------------------------------------------------------------
# Scaling constants for mass and profile, frozen from observed values.
# ---------------------------------------------------------------------------

GAUSS_KERNEL_LIMIT = math.pi**1.5 / 2.0  # limit of ||phi||^2 sqrt(t) for n=3, theta=m=1


def test_profile_norm_constants_approach_kernel_limit(averaged_cfg):
    params = ModelParams(n=3, theta=1.0, m=1.0)
    data = gaussian_data(3, 1.0)
    times = np.geomspace(1e6, 1e8, 8)
    series = build_norm_series(params, data, times, averaged_cfg, which="profile")
    scaled = series.values**2 * np.sqrt(times)
    assert float(np.max(scaled)) <= GAUSS_KERNEL_LIMIT * (1.0 + 2e-7)
    assert float(np.min(scaled)) >= GAUSS_KERNEL_LIMIT * (1.0 - 2e-7)


def test_mass_uniform_growth_constant(averaged_cfg):
    # theta = 3/4 growth: the scaled norm m ||u|| t^(-1/3) stays bounded
    # uniformly over a factor-four sweep of the mass parameter.
    rate = 1.0 / 3.0
    times = np.geomspace(1e4, 1e7, 6)
    sups = []
    for m in (0.5, 1.0, 2.0):
        params = ModelParams(n=1, theta=0.75, m=m)
        data = gaussian_data(1, 0.75)
        series = build_norm_series(params, data, times, averaged_cfg, which="solution")
        sups.append(m * float(np.max(series.values * times**-rate)))
    assert all(s <= 2.6 for s in sups), sups
    assert all(b > a for a, b in zip(sups, sups[1:])), sups
