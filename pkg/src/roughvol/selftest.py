"""Synthetic-oracle checks runnable without market data.

Each check returns a :class:`CheckResult`; :func:`run_self_test` runs them in
order and prints one line per check. :class:`Hooks` lets a test swap in a
deliberately broken estimator to confirm the harness notices.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import multifractal as mf
from . import pvar, stationarity, synth
from .reference import PARTITION_TABLE
from .series import partition_plan

SOFT_BUDGET_S = 300.0

CASCADE_A = 0.75
CASCADE_LEVELS = 16
CASCADE_QS = (-4.0, -2.0, -1.0, 1.0, 2.0, 4.0)


@dataclass(frozen=True)
class CheckResult:
    id: int
    name: str
    passed: bool
    detail: dict
    seconds: float
    budget: float

    @property
    def over_budget(self) -> bool:
        return self.seconds > self.budget

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        slow = f" (over {self.budget:g} s budget)" if self.over_budget else ""
        return f"[{tag}] {self.id:2d} {self.name}: {self.summary()} [{self.seconds:.1f} s]{slow}"

    def summary(self) -> str:
        return ", ".join(f"{k}={_fmt(v)}" for k, v in self.detail.items() if not isinstance(v, (list, dict)))


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.4g}"
    return str(v)


@dataclass
class Hooks:
    mfdfa: Callable = mf.mfdfa
    moment_scaling: Callable = mf.moment_scaling
    dwt_leaders: Callable = mf.dwt_leaders


def perturb_mfdfa(delta: float) -> Hooks:
    """Hooks whose MF-DFA adds ``delta`` to every H(q)."""

    def broken(x, *args, **kwargs):
        s = mf.mfdfa(x, *args, **kwargs)
        return mf.ScalingSpectrum(s.method, s.qs, s.exponents + delta, s.r_squared, s.scales, s.log_moments,
                                  s.excluded)

    return Hooks(mfdfa=broken)


def canonical_cascade(a: float = CASCADE_A, levels: int = CASCADE_LEVELS) -> np.ndarray:
    """Deterministic binomial cascade (weight ``a`` always on the left child)."""
    return synth.binomial_cascade(levels, a, None)


# ---------------------------------------------------------------- checks


def check_partitions(hooks: Hooks) -> tuple[bool, dict]:
    bad = []
    for freq, year, n_points, k, n, used in PARTITION_TABLE:
        plan = partition_plan(n_points)
        if (plan.k_opt, plan.block_len, plan.used_len) != (k, n, used):
            bad.append((freq, year))
    return not bad, {"rows": len(PARTITION_TABLE), "mismatches": len(bad), "bad": bad}


def check_w_identities(hooks: Hooks) -> tuple[bool, dict]:
    rng = np.random.default_rng(2)
    grids = [pvar.PGrid.make("standard"), pvar.PGrid.make("wide")]
    unit_max = 0.0
    for k in (4, 25, 97, 357):
        x = np.zeros(k * k)
        x[::k] = rng.choice([-1.0, 1.0], size=k)
        plan = partition_plan(x.size)
        for g in grids:
            unit_max = max(unit_max, float(np.max(np.abs(pvar.logw_curve(x, plan, g).logw))))
    grid = grids[0]
    cov_err = 0.0
    for _ in range(100):
        n = int(rng.integers(16, 5000))
        x = rng.standard_normal(n) * np.exp(rng.normal(0, 3))
        c = float(np.exp(rng.normal(0, 2)))
        plan = partition_plan(n)
        d = pvar.logw_curve(c * x, plan, grid).logw - pvar.logw_curve(x, plan, grid).logw
        cov_err = max(cov_err, float(np.max(np.abs(d - grid.values * math.log(c)))))
    return unit_max == 0.0 and cov_err <= 1e-10, {"unit_max_abs": unit_max, "scale_max_err": cov_err}


def check_zero_crossing(hooks: Hooks) -> tuple[bool, dict]:
    rng = np.random.default_rng(3)
    grid = pvar.PGrid.make("standard")
    p = grid.values
    shapes = (
        lambda ps: 1.0 / ps - 1.0 / p,  # straight line in 1/p
        lambda ps: p - ps,
        lambda ps: np.tanh(3.0 * (p - ps)),
        lambda ps: np.log(p / ps) * (1.0 + p),
    )
    worst = 0.0
    missed = 0
    for _ in range(50):
        ps = float(rng.uniform(0.15, 3.95))
        for f in shapes:
            y = -abs(rng.normal(1.0, 0.3)) * f(ps)
            est = pvar.find_zero_crossing(pvar.PVariationCurve(0, 0, p, y))
            if est.p_star is None:
                missed += 1
                continue
            worst = max(worst, abs(est.p_star - ps))
    neg = pvar.find_zero_crossing(pvar.PVariationCurve(0, 0, p, -0.5 - p))
    absent = neg.p_star is None and neg.h is None
    return missed == 0 and worst <= 0.01 and absent, {"max_err": worst, "missed": missed, "negative_absent": absent}


def check_mfdfa(hooks: Hooks) -> tuple[bool, dict]:
    x = canonical_cascade()
    qs = np.array(CASCADE_QS)
    spec = hooks.mfdfa(x, qs=qs)
    truth = np.array([synth.cascade_h_q(CASCADE_A, q) for q in qs])
    err = np.abs(spec.exponents - truth)
    widths = []
    for seed in range(20):
        g = synth.generate(synth.SynthSpec("gaussian_iid", 2**16, seed=seed))
        widths.append(hooks.mfdfa(g).summary.width)
    ok = bool(np.all(err <= 0.05)) and max(widths) < 0.15
    return ok, {"cascade_max_err": float(err.max()), "gaussian_max_width": float(max(widths)),
                "cascade_err": err.tolist(), "widths": widths}


def check_moments(hooks: Hooks) -> tuple[bool, dict]:
    ramp = np.arange(4096, dtype=float)
    qs = mf.q_grid(include_zero=False)
    s = hooks.moment_scaling(ramp, qs=qs)
    ramp_err = float(np.max(np.abs(s.exponents - qs)))
    bm = synth.generate(synth.SynthSpec("random_walk", 65_536, seed=5))
    qpos = np.arange(0.5, 4.01, 0.5)
    b = hooks.moment_scaling(bm, qs=qpos)
    bm_err = float(np.max(np.abs(b.exponents - qpos / 2)))
    return ramp_err <= 1e-9 and bm_err <= 0.1, {"ramp_max_err": ramp_err, "brownian_max_err": bm_err}


def leader_dominance(x, levels: int | None = None, wavelet: str = mf.DEFAULT_WAVELET) -> bool:
    """Every leader is at least the |coefficient| at its own (j, k)."""
    x = np.asarray(x, dtype=float)
    levels = levels or int(math.floor(math.log2(x.size))) - 2
    coeffs = mf.wavelet_coefficients(x, levels, wavelet)
    leaders = mf.wavelet_leaders(coeffs, len(mf.pywt.Wavelet(wavelet).dec_lo))
    for d, lead in zip(coeffs, leaders):
        own = np.abs(d[1 : 1 + lead.size])  # leader k is centred on coefficient k + 1
        if lead.size and not np.all(lead >= own):
            return False
    return True


def check_leaders(hooks: Hooks) -> tuple[bool, dict]:
    fbm = synth.generate(synth.SynthSpec("fbm", 2**16, {"H": 0.7}, seed=6))
    qs = np.array([-2.0, -1.0, 1.0, 2.0])
    s = hooks.dwt_leaders(fbm, qs=qs)
    err = float(np.max(np.abs(s.exponents - 0.7 * qs)))
    series = {
        "fbm": fbm,
        "gaussian": synth.generate(synth.SynthSpec("gaussian_iid", 2**14, seed=7)),
        "random_walk": synth.generate(synth.SynthSpec("random_walk", 2**14, seed=8)),
        "cascade": canonical_cascade(levels=14),
        "ramp": np.arange(2**12, dtype=float),
    }
    dom = {k: leader_dominance(v) for k, v in series.items()}
    return err <= 0.15 and all(dom.values()), {"fbm_max_err": err, "dominance": all(dom.values()),
                                               "per_series": dom}


def check_shuffle(hooks: Hooks) -> tuple[bool, dict]:
    x = canonical_cascade()
    cmp = mf.shuffle_comparison(x, "mfdfa", seed=0, n_shuffles=10)
    ratio = cmp.width_ratio
    rng = np.random.default_rng(9)
    samples = [x, rng.standard_normal(1000), rng.integers(0, 5, 777).astype(float), np.array([3.0])]
    preserved = all(np.array_equal(np.sort(mf.shuffle(s, i)), np.sort(s)) for i, s in enumerate(samples))
    ok = ratio is not None and ratio < 0.5 and preserved
    return ok, {"mfdfa_width_ratio": ratio, "original_width": cmp.original.summary.width,
                "shuffled_width": cmp.shuffled.summary.width, "sorted_preserved": preserved}


def check_adf(hooks: Hooks) -> tuple[bool, dict]:
    rw_rej = noise_rej = 0
    for seed in range(100):
        rw = synth.generate(synth.SynthSpec("random_walk", 5000, seed=seed))
        rw_rej += stationarity.adf_test(rw).p_value < 0.05
        wn = synth.generate(synth.SynthSpec("gaussian_iid", 5000, seed=1000 + seed))
        noise_rej += stationarity.adf_test(wn).p_value < 0.05
    ok = rw_rej <= 7 and noise_rej >= 99
    return ok, {"random_walk_rejections": int(rw_rej), "noise_rejections": int(noise_rej), "trials": 100}


def brute_force_split(x, min_segment: int = 1) -> int | None:
    x = np.asarray(x, dtype=float)
    best, best_tau = math.inf, None
    for tau in range(min_segment, x.size - min_segment + 1):
        left, right = x[:tau], x[tau:]
        cost = float(np.sum((left - left.mean()) ** 2) + np.sum((right - right.mean()) ** 2))
        if cost < best:
            best, best_tau = cost, tau
    return best_tau


def check_segmentation(hooks: Hooks) -> tuple[bool, dict]:
    rng = np.random.default_rng(10)
    mismatches = 0
    for _ in range(200):
        n = int(rng.integers(2, 201))
        x = rng.standard_normal(n) + rng.choice([0.0, 2.0]) * (np.arange(n) >= rng.integers(0, n))
        tau, _ = stationarity.best_split(x, 1)
        mismatches += tau != brute_force_split(x, 1)
        if n >= 40:
            bs = stationarity.binary_segmentation(x, max_breaks=1, min_segment=20)
            want = brute_force_split(x, 20)
            mismatches += (bs.indices[0] if bs.indices else None) != want
    truth = [100, 250, 330]
    means = [0.0, 5.0, -3.0, 2.0]
    edges = [0] + truth + [400]
    step = np.concatenate([np.full(b - a, m) for a, b, m in zip(edges[:-1], edges[1:], means)])
    step = step + 0.1 * rng.standard_normal(step.size)
    found = stationarity.binary_segmentation(step, max_breaks=3, min_segment=20).indices
    return mismatches == 0 and found == truth, {"split_mismatches": int(mismatches), "step_breaks": found}


def check_fgn(hooks: Hooks, reps: int = 32, n: int = 2**16, max_lag: int = 20) -> tuple[bool, dict]:
    rng = np.random.default_rng(11)
    lags = np.arange(1, max_lag + 1)
    worst = {}
    for H in (0.3, 0.5, 0.8):
        est = np.empty((reps, lags.size))
        for r in range(reps):
            x = synth.fgn(n, H, rng)
            est[r] = [np.dot(x[:-k], x[k:]) / (n - k) for k in lags]
        se = est.std(axis=0, ddof=1) / math.sqrt(reps)
        z = np.abs(est.mean(axis=0) - synth.fgn_autocovariance(lags, H)) / se
        worst[H] = float(z.max())
    return max(worst.values()) <= 4.0, {"max_z": max(worst.values()), "per_H": worst}


@dataclass(frozen=True)
class Check:
    id: int
    name: str
    fn: Callable
    budget: float


CHECKS = (
    Check(1, "partition plans", check_partitions, 1.0),
    Check(2, "W-statistic identities", check_w_identities, 1.0),
    Check(3, "zero-crossing detection", check_zero_crossing, 1.0),
    Check(4, "MF-DFA oracle", check_mfdfa, 60.0),
    Check(5, "moment-scaling oracle", check_moments, 30.0),
    Check(6, "wavelet-leaders oracle", check_leaders, 60.0),
    Check(7, "shuffle control", check_shuffle, 30.0),
    Check(8, "ADF calibration", check_adf, 60.0),
    Check(9, "binary segmentation", check_segmentation, 10.0),
    Check(10, "fGn generator", check_fgn, 30.0),
)


def run_check(check: Check, hooks: Hooks | None = None) -> CheckResult:
    hooks = hooks or Hooks()
    t0 = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        try:
            ok, detail = check.fn(hooks)
        except Exception as exc:
            ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CheckResult(check.id, check.name, bool(ok), detail, time.perf_counter() - t0, check.budget)


def run_self_test(ids=None, hooks: Hooks | None = None, echo: Callable[[str], None] | None = print) -> list[CheckResult]:
    results = []
    t0 = time.perf_counter()
    for check in CHECKS:
        if ids and check.id not in ids:
            continue
        res = run_check(check, hooks)
        results.append(res)
        if echo:
            echo(res.line())
    total = time.perf_counter() - t0
    if echo:
        n_pass = sum(r.passed for r in results)
        echo(f"{n_pass}/{len(results)} checks passed in {total:.1f} s")
        if total > SOFT_BUDGET_S:
            echo(f"warning: self-test took {total:.0f} s, above the {SOFT_BUDGET_S:.0f} s budget")
    return results
