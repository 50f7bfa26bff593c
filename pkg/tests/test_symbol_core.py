import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from logwave import (
    CharRoots,
    ModelParams,
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

# Closed-form spot values at theta=1, m=1:
#   f(2) = 16 - 16 - 4 log 5, f(3) = 81 - 36 - 4 log 10.
F_AT_2 = -4.0 * math.log(5.0)
F_AT_3 = 45.0 - 4.0 * math.log(10.0)

# Root of f for theta=1, m=1, frozen from the bisection at 1e-13 bracket width.
DELTA_REF = 2.3190703250339766

params_st = st.builds(
    ModelParams,
    n=st.integers(min_value=1, max_value=6),
    theta=st.floats(min_value=0.05, max_value=1.0),
    m=st.floats(min_value=0.1, max_value=5.0),
)


def test_discriminant_frozen_values(ref_params):
    assert float(discriminant(2.0, ref_params)) == pytest.approx(F_AT_2, rel=1e-14)
    assert float(discriminant(3.0, ref_params)) == pytest.approx(F_AT_3, rel=1e-14)


def test_log_mass_value(ref_params):
    assert float(log_mass(1.0, ref_params)) == pytest.approx(math.log(2.0), rel=1e-15)


def test_delta_reference_value(ref_params):
    delta = find_delta(ref_params)
    assert 2.2 < delta < 2.4
    assert delta == pytest.approx(DELTA_REF, abs=1e-12)


def test_thresholds_reference(ref_params, ref_thresholds):
    thr = ref_thresholds
    assert thr.delta0 == 1.0
    assert thr.delta1 == pytest.approx(thr.delta + 1.0, rel=1e-15)
    assert thr.alpha == pytest.approx(1.371679618086257, abs=1e-12)
    assert thr.beta == pytest.approx(1.4048429011847254, abs=1e-12)


def test_select_thresholds_rejects_small_delta(ref_params):
    with pytest.raises(ValueError):
        select_thresholds(ref_params, 1.5)


@pytest.mark.parametrize(
    "bad",
    [
        dict(n=0, theta=1.0, m=1.0),
        dict(n=3, theta=0.0, m=1.0),
        dict(n=3, theta=1.5, m=1.0),
        dict(n=3, theta=1.0, m=0.0),
        dict(n=3, theta=1.0, m=-2.0),
    ],
)
def test_params_validation(bad):
    with pytest.raises(ValueError):
        ModelParams(**bad)


@given(params_st)
def test_delta_sign_pattern(params):
    delta = find_delta(params)
    assert delta > 2.0
    for eps in (1e-2, 1e-4, 1e-6):
        assert float(discriminant(delta * (1.0 - eps), params)) < 0.0
        assert float(discriminant(delta * (1.0 + eps), params)) > 0.0


@given(params_st)
def test_threshold_invariants(params):
    thr = thresholds_for(params)
    assert 0.0 < thr.delta0 <= 1.0
    assert thr.delta0 < thr.delta < thr.delta1
    assert thr.alpha > 0.0
    # beta = delta1^2/2 * (1 - sqrt(s)) with s < 1 - 2 M(delta1)/delta1^4
    # stays above 1 for every admissible parameter set.
    assert thr.beta > 1.0


@given(params_st, st.floats(min_value=0.05, max_value=0.95))
def test_b_and_frequency_relation(params, frac):
    # b^2 = w^2 - r^4/4 on the oscillatory side.
    delta = find_delta(params)
    r = frac * delta
    b = float(osc_b(r, params))
    w2 = float(osc_freq_sq(r, params))
    assert b > 0.0
    assert b * b == pytest.approx(w2 - r**4 / 4.0, rel=1e-12, abs=1e-300)


@given(params_st, st.floats(min_value=1.05, max_value=4.0))
def test_d_below_decay_rate(params, mult):
    # 0 < d < a above delta keeps both high-zone exponents negative.
    delta = find_delta(params)
    r = mult * delta
    d = float(osc_d(r, params))
    a = 0.5 * r * r
    assert 0.0 < d < a


def test_root_branches_reject_wrong_zone(ref_params, ref_thresholds):
    with pytest.raises(ValueError):
        osc_b(ref_thresholds.delta + 0.5, ref_params)
    with pytest.raises(ValueError):
        osc_d(ref_thresholds.delta - 0.5, ref_params)


def test_char_roots_zones(ref_params, ref_thresholds):
    thr = ref_thresholds
    low = char_roots(1.0, ref_params, thr)
    assert low.zone == "low-complex" and low.osc > 0.0 and low.a == 0.5
    crit = char_roots(thr.delta * (1.0 + 1e-10), ref_params, thr)
    assert crit.zone == "critical" and crit.osc == 0.0
    high = char_roots(thr.delta + 1.0, ref_params, thr)
    assert high.zone == "high-real" and 0.0 < high.osc < high.a
    assert isinstance(low, CharRoots)
    with pytest.raises(ValueError):
        char_roots(0.0, ref_params, thr)


def test_inverse_frequency_identity(ref_params, ref_thresholds):
    # 1/b = 1/w + R must hold to 1e-12 absolute across the oscillatory zone.
    r = np.linspace(0.05, 0.999 * ref_thresholds.delta, 200)
    b = osc_b(r, ref_params)
    w = np.sqrt(osc_freq_sq(r, ref_params))
    rem = inverse_frequency_remainder(r, ref_params, delta=ref_thresholds.delta)
    assert np.all(rem > 0.0)
    assert float(np.max(np.abs(1.0 / b - 1.0 / w - rem))) < 1e-12


@given(params_st, st.floats(min_value=0.02, max_value=0.9))
def test_inverse_frequency_identity_property(params, frac):
    delta = find_delta(params)
    r = frac * delta
    b = float(osc_b(r, params))
    w = math.sqrt(float(osc_freq_sq(r, params)))
    rem = float(inverse_frequency_remainder(r, params, delta=delta))
    assert abs(1.0 / b - 1.0 / w - rem) <= 1e-12 * (1.0 / b)


def test_inverse_frequency_domain(ref_params, ref_thresholds):
    with pytest.raises(ValueError):
        inverse_frequency_remainder(ref_thresholds.delta, ref_params)
    with pytest.raises(ValueError):
        inverse_frequency_remainder(0.0, ref_params)
