"""Spectral laboratory for the strongly damped wave equation with a
logarithmic mass term.

Each radial Fourier mode solves a damped oscillator ODE in closed form;
the package evaluates those modes, the long-time Gauss-kernel-like
profile, L2 norms by adaptive radial quadrature, and the decay/growth
rate laws the norms obey, with an independent ODE oracle for
cross-validation.
"""

from .symbol_core import (
    CharRoots,
    ModelParams,
    ZoneThresholds,
    char_roots,
    discriminant,
    find_delta,
    inverse_frequency_remainder,
    log_mass,
    osc_b,
    osc_d,
    osc_freq_sq,
    select_thresholds,
    thresholds_for,
)
from .evolution import (
    FourierData,
    ModeValue,
    asymptotic_profile,
    ball_data,
    data_shift_bound_sweep,
    decompose_data,
    freq_gap,
    gaussian_data,
    mean_zero_data,
    mode_arrays,
    mode_energy,
    mode_solution,
    remainder_amplitude,
    remainder_data,
    remainder_phase_envelope,
    sinc,
    sinch,
)
from .quadrature import (
    NormBreakdown,
    QuadratureConfig,
    QuadratureError,
    energy_total,
    integrate_adaptive,
    norm_sq_error,
    norm_sq_profile,
    norm_sq_solution,
    sphere_area,
)
from .oracle import (
    ModeDeviation,
    OdeRunConfig,
    OracleConvergenceError,
    compare_modes,
    rk4_mode,
)
from .rates import (
    ErfCheckReport,
    LogIntegralReport,
    MomentScalingReport,
    NormRateReport,
    NormSeries,
    ProfileReport,
    RateFit,
    RegimePrediction,
    build_norm_series,
    check_norm_rates,
    check_profile_convergence,
    erf_scaling_check,
    fit_log_law,
    fit_power_law,
    gauss_erf,
    geometric_times,
    log_integral_check,
    moment_scaling_check,
    predict_regime,
)

__version__ = "0.1.0"

__all__ = [
    "CharRoots",
    "ModelParams",
    "ZoneThresholds",
    "char_roots",
    "discriminant",
    "find_delta",
    "inverse_frequency_remainder",
    "log_mass",
    "osc_b",
    "osc_d",
    "osc_freq_sq",
    "select_thresholds",
    "thresholds_for",
    "FourierData",
    "ModeValue",
    "asymptotic_profile",
    "ball_data",
    "data_shift_bound_sweep",
    "decompose_data",
    "freq_gap",
    "gaussian_data",
    "mean_zero_data",
    "mode_arrays",
    "mode_energy",
    "mode_solution",
    "remainder_amplitude",
    "remainder_data",
    "remainder_phase_envelope",
    "sinc",
    "sinch",
    "NormBreakdown",
    "QuadratureConfig",
    "QuadratureError",
    "energy_total",
    "integrate_adaptive",
    "norm_sq_error",
    "norm_sq_profile",
    "norm_sq_solution",
    "sphere_area",
    "ModeDeviation",
    "OdeRunConfig",
    "OracleConvergenceError",
    "compare_modes",
    "rk4_mode",
    "ErfCheckReport",
    "LogIntegralReport",
    "MomentScalingReport",
    "NormRateReport",
    "NormSeries",
    "ProfileReport",
    "RateFit",
    "RegimePrediction",
    "build_norm_series",
    "check_norm_rates",
    "check_profile_convergence",
    "erf_scaling_check",
    "fit_log_law",
    "fit_power_law",
    "gauss_erf",
    "geometric_times",
    "log_integral_check",
    "moment_scaling_check",
    "predict_regime",
    "__version__",
]
