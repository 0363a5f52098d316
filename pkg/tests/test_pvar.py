import math

import numpy as np
import pytest
from scipy.optimize import brentq
from scipy.special import gammaln
from hypothesis import assume, given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from roughvol import synth
from roughvol.pvar import (
    PGrid,
    PVariationCurve,
    block_sums,
    find_zero_crossing,
    h_vs_k_diagnostic,
    k_grid,
    logw_curve,
    w_statistic,
)
from roughvol.series import partition_plan

STANDARD = PGrid.make("standard")
WIDE = PGrid.make("wide")


def curve(p, y):
    return PVariationCurve(0, 0, np.asarray(p, float), np.asarray(y, float))


def test_grids():
    assert len(STANDARD) == 391 and len(WIDE) == 400
    assert STANDARD.values[0] == 0.1 and STANDARD.values[-1] == 4.0
    assert WIDE.values[0] == 0.01 and WIDE.values[-1] == 4.0
    np.testing.assert_allclose(np.diff(WIDE.values), 0.01, atol=1e-12)
    with pytest.raises(ValueError):
        PGrid.make("coarse")
    with pytest.raises(ValueError):
        PGrid("custom", np.array([1.0, 0.5]))


def test_block_sum_examples():
    np.testing.assert_array_equal(block_sums([1, 2, 3, 4], 2), [3, 7])
    np.testing.assert_array_equal(block_sums([0.5] * 4, 2), [1, 1])
    with pytest.raises(ValueError):
        block_sums(np.ones(10), 3)


@given(arrays(float, st.sampled_from([12, 30, 64]), elements=st.floats(-1e3, 1e3)), st.sampled_from([1, 2, 3]))
def test_block_sums_left_to_right(x, k):
    assume(x.size % k == 0)
    n = x.size // k
    want = []
    for j in range(k):
        acc = 0.0
        for v in x[j * n : (j + 1) * n]:
            acc += v
        want.append(acc)
    assert block_sums(x, k).tolist() == want


def test_w_statistic_examples():
    assert w_statistic([0.5] * 4, 2, 1.7) == 1.0
    assert w_statistic([0.1, 0.3, 0.2, 0.4], 2, 2) == pytest.approx(0.26, abs=1e-15)
    with pytest.raises(ValueError):
        w_statistic([1.0, 2.0], 2, 0.0)


def test_logw_matches_direct_w():
    x = np.random.default_rng(0).standard_normal(400) * 0.3
    plan = partition_plan(400)
    c = logw_curve(x, plan, STANDARD)
    direct = [math.log(w_statistic(x, plan.k_opt, p)) for p in STANDARD.values[::40]]
    np.testing.assert_allclose(c.logw[::40], direct, rtol=1e-12)
    assert c.min_logw == c.logw.min() and c.max_logw == c.logw.max()
    assert len(c.points) == 391


def test_logw_survives_extreme_magnitudes():
    x = np.full(100, 1e-200)
    c = logw_curve(x, partition_plan(100), STANDARD)
    assert np.all(np.isfinite(c.logw))
    np.testing.assert_allclose(c.logw, STANDARD.values * math.log(10 * 1e-200), rtol=1e-12)


def test_unit_block_sums_give_zero():
    x = np.zeros(64)
    x[::8] = [1, -1, 1, 1, -1, 1, -1, -1]
    for g in (STANDARD, WIDE):
        assert np.all(logw_curve(x, partition_plan(64), g).logw == 0.0)


@given(arrays(float, st.integers(16, 600), elements=st.floats(1e-3, 10)), st.floats(1e-3, 1e3), st.integers(0, 2**32 - 1))
def test_scale_covariance(x, c, seed):
    x = x * np.random.default_rng(seed).choice([-1.0, 1.0], x.size)
    plan = partition_plan(x.size)
    xt = plan.truncate(x)
    # skip blocks whose sum cancels to rounding noise: c*sum(x) and sum(c*x) then differ relatively
    scale = np.abs(xt).reshape(plan.k_opt, -1).sum(axis=1)
    assume(np.all(np.abs(block_sums(xt, plan.k_opt)) > 1e-8 * scale))
    d = logw_curve(c * x, plan, STANDARD).logw - logw_curve(x, plan, STANDARD).logw
    np.testing.assert_allclose(d, STANDARD.values * math.log(c), rtol=0, atol=1e-10)


@given(arrays(float, st.integers(16, 400), elements=st.floats(0.01, 100)))
def test_small_p_limit(x):
    plan = partition_plan(x.size)
    s = block_sums(plan.truncate(x), plan.k_opt)
    lw = logw_curve(x, plan, WIDE).logw[0]
    # log W(p) lies between p min ln|S| and p max ln|S|
    log_s = np.log(np.abs(s))
    assert 0.01 * log_s.min() - 1e-12 <= lw <= 0.01 * log_s.max() + 1e-12
    assert abs(lw) <= 0.01 * np.max(np.abs(log_s)) + 1e-12


def test_monotone_in_p():
    rng = np.random.default_rng(1)
    small = rng.uniform(1e-4, 1e-3, 400)  # every block sum below 1
    big = rng.uniform(1.0, 2.0, 400)
    assert np.all(np.diff(logw_curve(small, partition_plan(400), STANDARD).logw) < 0)
    assert np.all(np.diff(logw_curve(big, partition_plan(400), STANDARD).logw) > 0)


def test_crossing_by_hand():
    est = find_zero_crossing(curve([1.0, 2.0], [0.2, -0.2]))
    assert est.p_star == pytest.approx(4 / 3, abs=1e-14)
    assert est.h == pytest.approx(0.75, abs=1e-14)
    exact = find_zero_crossing(curve([1.0, 2.0, 3.0], [0.3, 0.0, -0.1]))
    assert (exact.p_star, exact.h) == (2.0, 0.5)


def test_all_negative_is_absent():
    est = find_zero_crossing(curve(STANDARD.values, -1 - STANDARD.values))
    assert est.p_star is None and est.h is None and est.n_crossings == 0


def test_several_crossings_flagged():
    p = STANDARD.values
    est = find_zero_crossing(curve(p, np.sin(3 * p)))
    assert est.n_crossings == 3
    assert not est.unique
    assert est.p_star == pytest.approx(math.pi / 3, abs=0.01)


def test_crossing_of_exact_power_law():
    # |S_j| = b for every block: log W = p log b never crosses zero unless b = 1
    x = np.full(100, 0.3)
    assert find_zero_crossing(logw_curve(x, partition_plan(100), STANDARD)).p_star is None


@given(st.floats(0.12, 3.9), st.floats(0.2, 5.0))
def test_grid_refinement(ps, slope):
    fine = PGrid("fine", np.round(np.arange(0.1, 4.0001, 0.005), 10))
    shape = lambda p: slope * np.tanh(ps - p) * (1 + p)
    coarse_est = find_zero_crossing(curve(STANDARD.values, shape(STANDARD.values))).p_star
    fine_est = find_zero_crossing(curve(fine.values, shape(fine.values))).p_star
    assert abs(coarse_est - fine_est) < 0.01


def test_scaling_moves_the_crossing():
    """The zero crossing is not scale invariant: scaling x by c shifts log W by p ln c."""
    x = synth.generate(synth.SynthSpec("fgn", 4096, {"H": 0.5}, seed=1)) * 0.05
    plan = partition_plan(x.size)
    a = find_zero_crossing(logw_curve(x, plan, STANDARD))
    b = find_zero_crossing(logw_curve(3.0 * x, plan, STANDARD))
    assert a.p_star != b.p_star


def test_k_grid():
    ks = k_grid(128_000, 1)
    assert ks[0] == 50 and np.all(np.diff(ks) == 10)
    assert ks[-1] <= 2 * math.sqrt(128_000)
    assert np.all(np.diff(k_grid(8000, 15)) == 2)
    assert np.all(np.diff(k_grid(8000, 15, step=7)) == 7)


def gaussian_crossing_h(sigma):
    """1/p* where p log(sigma) + log E|Z|^p = 0 for standard normal Z."""
    log_abs_moment = lambda p: 0.5 * p * math.log(2) + gammaln((p + 1) / 2) - 0.5 * math.log(math.pi)
    return 1.0 / brentq(lambda p: p * math.log(sigma) + log_abs_moment(p), 0.05, 40.0)


@pytest.mark.slow
def test_h_vs_k_tracks_gaussian_moment_prediction():
    # fGn block sums of length n are N(0, n^{2H}), so the crossing of the unnormalised
    # statistic sits where p H log(n) + log E|Z|^p = 0; it moves with n rather than
    # settling at 1/H
    n_pts, H = 2**20, 0.1
    ks = np.arange(500, 1501, 100)
    want = np.array([gaussian_crossing_h((n_pts // k) ** H / 1000**H) for k in ks])
    runs = []
    for seed in range(8):
        x = synth.generate(synth.SynthSpec("fgn", n_pts, {"H": H}, seed=100 + seed)) / 1000**H
        runs.append([p.h for p in h_vs_k_diagnostic(x, ks, STANDARD)])
    got = np.mean(runs, axis=0)
    assert np.all(np.abs(got - want) <= 0.1)
    assert np.all(np.diff(want) < 0)  # systematic drift with block length


def test_h_vs_k_negative_everywhere():
    x = np.abs(np.random.default_rng(3).standard_normal(10_000)) * 1e-4
    pts = h_vs_k_diagnostic(x, k_grid(x.size, 1), STANDARD)
    assert pts and all(p.h is None for p in pts)
    # the straight-line root can still be reported and may be negative
    assert all(p.h_regression is not None for p in pts)


def test_h_vs_k_truncates_per_k():
    x = np.random.default_rng(4).standard_normal(1003)
    pts = h_vs_k_diagnostic(x, [7, 50], STANDARD)
    assert [(p.k, p.n) for p in pts] == [(7, 143), (50, 20)]
