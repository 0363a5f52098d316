import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from statsmodels.tsa.stattools import adfuller

from roughvol.reference import ROLLING_TABLE
from roughvol.selftest import brute_force_split
from roughvol.stationarity import (
    adf_test,
    best_split,
    binary_segmentation,
    rolling_stability,
    rolling_window,
    schwert_max_lag,
)


def noisy_walk(seed, n=500):
    rng = np.random.default_rng(seed)
    return 0.1 * np.cumsum(rng.standard_normal(n)) + 0.3 * rng.standard_normal(n)


# ------------------------------------------------------------------ ADF


@pytest.mark.parametrize("regression", ["n", "c"])
@pytest.mark.parametrize("seed", range(6))
def test_adf_matches_statsmodels_aic(seed, regression):
    x = noisy_walk(seed)
    ours = adf_test(x, regression=regression)
    stat, pval, lags, nobs, *_ = adfuller(x, regression=regression, autolag="AIC")
    assert ours.lags_used == lags and ours.n_obs == nobs
    assert ours.stat == pytest.approx(stat, abs=1e-9)
    assert ours.p_value == pytest.approx(pval, abs=1e-9)


@pytest.mark.parametrize("regression", ["n", "c"])
def test_adf_zero_lag_matches_statsmodels(regression):
    x = noisy_walk(11, 800)
    ref = adfuller(x, maxlag=0, regression=regression, autolag=None)
    ours = adf_test(x, max_lag=0, regression=regression)
    assert ours.lags_used == 0 and ours.n_obs == ref[3]
    assert ours.stat == pytest.approx(ref[0], abs=1e-9)


@pytest.mark.parametrize("lag", [1, 3, 8])
def test_adf_lag_cap(lag):
    assert adf_test(noisy_walk(12, 800), max_lag=lag).lags_used <= lag


def test_schwert_rule():
    assert schwert_max_lag(100) == 12
    assert schwert_max_lag(128_013) == math.floor(12 * 1280.13**0.25)


def test_adf_separates_walks_from_noise():
    rng = np.random.default_rng(0)
    assert not adf_test(np.cumsum(rng.standard_normal(3000))).stationary
    assert adf_test(rng.standard_normal(3000)).stationary


def test_adf_critical_values_ordered():
    r = adf_test(noisy_walk(1))
    assert r.critical_values["1%"] < r.critical_values["5%"] < r.critical_values["10%"] < 0


def test_adf_errors():
    with pytest.raises(ValueError):
        adf_test(np.ones(100))
    with pytest.raises(ValueError):
        adf_test(np.arange(10.0))
    with pytest.raises(ValueError):
        adf_test(np.random.default_rng(0).standard_normal(100), regression="ct")


# ------------------------------------------------------------------ rolling


def test_rolling_windows_match_reference():
    for *_, n_obs, window in ROLLING_TABLE:
        assert rolling_window(n_obs) == window


def test_rolling_against_pandas_route():
    import pandas as pd

    x = np.random.default_rng(2).standard_normal(1000) + 5.0
    r = rolling_stability(x)
    roll = pd.Series(x).rolling(r.window)
    assert r.window == 50
    assert r.mean_std == pytest.approx(np.std(roll.mean().dropna().to_numpy()), rel=1e-10)
    assert r.var_std == pytest.approx(np.std(roll.var(ddof=1).dropna().to_numpy()), rel=1e-8)


def test_rolling_constant_and_short():
    r = rolling_stability(np.full(100, 3.0))
    assert (r.mean_std, r.var_std, r.window) == (0.0, 0.0, 10)
    with pytest.raises(ValueError):
        rolling_stability(np.ones(10))


# ------------------------------------------------------------------ segmentation


@settings(max_examples=60)
@given(arrays(float, st.integers(4, 80), elements=st.floats(-100, 100)), st.integers(1, 5))
def test_best_split_matches_brute_force(x, m):
    tau, _ = best_split(x, m)
    want = brute_force_split(x, m)
    if want is None:
        assert tau is None
    else:
        # brute force picks the smallest index among cost ties up to rounding
        def cost(t):
            return sum(((s - s.mean()) ** 2).sum() for s in (x[:t], x[t:]))

        assert cost(tau) == pytest.approx(cost(want), rel=1e-9, abs=1e-9)


def test_step_series_breaks():
    x = np.concatenate([np.zeros(100), np.full(150, 5.0), np.full(80, -3.0), np.full(70, 1.0)])
    x = x + 0.01 * np.random.default_rng(0).standard_normal(x.size)
    bp = binary_segmentation(x)
    assert bp.indices == sorted(bp.indices)
    assert {100, 250, 330} <= set(bp.indices)
    assert bp.cost_after < bp.cost_before


def test_ties_go_to_smallest_index():
    # symmetric series: splits at 20 and 40 give identical gain
    x = np.concatenate([np.zeros(20), np.ones(20), np.zeros(20)])
    tau, _ = best_split(x, 1)
    assert tau == 20


def test_constant_series_has_no_breaks():
    bp = binary_segmentation(np.full(200, 2.0))
    assert bp.indices == [] and bp.cost_after == bp.cost_before == 0.0


def test_min_segment_respected():
    x = np.concatenate([np.zeros(5), np.full(95, 10.0)])
    bp = binary_segmentation(x, min_segment=20)
    assert all(b >= 20 and x.size - b >= 20 for b in bp.indices)
    with pytest.raises(ValueError):
        binary_segmentation(np.ones(30), min_segment=20)


@settings(max_examples=30)
@given(arrays(float, st.integers(40, 200), elements=st.floats(-10, 10)), st.integers(1, 5))
def test_segmentation_invariants(x, k):
    bp = binary_segmentation(x, max_breaks=k, min_segment=10)
    assert len(bp.indices) <= k
    assert bp.indices == sorted(set(bp.indices))
    edges = [0] + bp.indices + [x.size]
    assert all(b - a >= 10 for a, b in zip(edges, edges[1:]))
    assert bp.cost_after <= bp.cost_before + 1e-9 * max(1.0, bp.cost_before)
