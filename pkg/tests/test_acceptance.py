"""Release gate: one test per acceptance criterion, each printing a PASS/FAIL line.

Criteria 1-10 run on synthetic oracles. Criteria 11-14 need the Bitstamp
BTC/USD minute file (``pytest --btc-csv PATH``) and skip without it.
"""

import pandas as pd
import pytest

from roughvol.config import RunConfig
from roughvol.pipeline import run_pipeline
from roughvol.reference import (
    ADF_TABLE,
    COMPLETENESS_TABLE,
    EXCLUDED_YEARS,
    LOGW_TABLE,
    MFDFA_RV_TABLE,
    ROLLING_TABLE,
)
from roughvol.selftest import CHECKS, run_check

from .conftest import ACCEPTANCE_LINES


def record(cid, name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {cid} {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def data_tables(request, cid, name):
    """The study tables, or a SKIP line and a skip when the dataset is absent."""
    try:
        return request.getfixturevalue("btc_run")[1]
    except pytest.skip.Exception:
        ACCEPTANCE_LINES.append(f"[SKIP] {cid} {name}: Bitstamp minute CSV not supplied (--btc-csv PATH)")
        raise


# ------------------------------------------------------------------ oracle tier


@pytest.mark.parametrize("check", CHECKS, ids=[f"{c.id}-{c.name.replace(' ', '_')}" for c in CHECKS])
def test_oracle_criterion(check):
    res = run_check(check)
    in_budget = res.seconds < check.budget
    ACCEPTANCE_LINES.append(res.line())
    print(res.line())
    assert res.passed, res.summary()
    assert in_budget, f"took {res.seconds:.1f} s, budget {check.budget} s"


# ------------------------------------------------------------------ data tier


@pytest.fixture(scope="module")
def btc_run(btc_csv, tmp_path_factory):
    out = tmp_path_factory.mktemp("btc")
    cfg = RunConfig(input=str(btc_csv), out=str(out), series="rv", methods=("mfdfa",), shuffles=10, seed=0)
    res = run_pipeline(cfg)
    tables = {s: pd.read_csv(out / f"{s}.csv") for s in ("completeness", "logw", "adf", "rolling", "mfdfa")
              if (out / f"{s}.csv").exists()}
    return res, tables


def by_key(df):
    return {(int(r.frequency_min), int(r.year)): r for r in df.itertuples()}


@pytest.mark.data
def test_criterion_11_completeness(request):
    t = data_tables(request, 11, "completeness table")
    got = {(int(r.year), int(r.frequency_min)): r for r in t["completeness"].itertuples()}
    worst, pattern_bad, missing = 0.0, [], []
    for year, freq, _, _, pct in COMPLETENESS_TABLE:
        r = got.get((year, freq))
        if r is None:
            missing.append((year, freq))
            continue
        worst = max(worst, abs(r.completeness_pct - pct))
        if bool(r.retained) != (year not in EXCLUDED_YEARS[freq]):
            pattern_bad.append((year, freq))
    ok = not missing and worst <= 0.10 and not pattern_bad
    record(11, "completeness table", ok, f"max_abs_pct_err={worst:.3g}, pattern_mismatches={pattern_bad}, "
                                          f"missing={missing}")
    assert ok


@pytest.mark.data
def test_criterion_12_logw_summary(request):
    t = data_tables(request, 12, "log W summary")
    got = by_key(t["logw"])
    worst, sign_bad, missing = 0.0, [], []
    for freq, year, smin, smax, wmin, wmax in LOGW_TABLE:
        r = got.get((freq, year))
        if r is None:
            missing.append((freq, year))
            continue
        if not (r.standard_max < 0 and r.wide_max <= -0.005):
            sign_bad.append((freq, year))
        for mine, ref in ((r.standard_min, smin), (r.standard_max, smax), (r.wide_min, wmin), (r.wide_max, wmax)):
            worst = max(worst, abs(mine - ref))
    ok = not missing and not sign_bad and worst <= 0.05
    record(12, "log W summary", ok, f"max_abs_err={worst:.3g}, sign_violations={sign_bad}, missing={missing}")
    assert ok


@pytest.mark.data
def test_criterion_13_adf_and_rolling(request):
    t = data_tables(request, 13, "ADF and rolling windows")
    adf, roll = by_key(t["adf"]), by_key(t["rolling"])
    worst, verdict_bad, window_bad, missing = 0.0, [], [], []
    for freq, year, _, stat, stationary in ADF_TABLE:
        r = adf.get((freq, year))
        if r is None:
            missing.append((freq, year))
            continue
        worst = max(worst, abs(r.adf_stat - stat))
        if bool(r.stationary) != stationary:
            verdict_bad.append((freq, year))
    for freq, year, _, window in ROLLING_TABLE:
        r = roll.get((freq, year))
        if r is None or int(r.rolling_window) != window:
            window_bad.append((freq, year))
    ok = not missing and worst <= 0.5 and not verdict_bad and not window_bad
    record(13, "ADF and rolling windows", ok, f"max_abs_stat_err={worst:.3g}, verdict_mismatches={verdict_bad}, "
                                               f"window_mismatches={window_bad}, missing={missing}")
    assert ok


def shuffled_smaller_share(rows):
    """Fraction of (orig_width, shuf_width) pairs with the shuffled width strictly smaller."""
    rows = list(rows)
    return sum(s < o for o, s in rows) / len(rows)


@pytest.mark.data
def test_criterion_14_mfdfa_rv(request):
    t = data_tables(request, 14, "MF-DFA RV summaries")
    got = by_key(t["mfdfa"])
    worst, pairs, missing = 0.0, [], []
    for freq, year, _, _, mean, width, *_ in MFDFA_RV_TABLE:
        r = got.get((freq, year))
        if r is None:
            missing.append((freq, year))
            continue
        worst = max(worst, abs(r.orig_mean - mean), abs(r.orig_width - width))
        pairs.append((r.orig_width, r.shuf_width))
    share = shuffled_smaller_share(pairs) if pairs else 0.0
    ok = not missing and worst <= 0.05 and share >= 0.9
    record(14, "MF-DFA RV summaries", ok, f"max_abs_err={worst:.3g}, shuffled_smaller={share:.2f}, missing={missing}")
    assert ok


def test_published_mfdfa_table_pattern():
    """The shuffled-below-original share in the published table itself (13 of 27 rows)."""
    share = shuffled_smaller_share((r[5], r[9]) for r in MFDFA_RV_TABLE)
    assert len(MFDFA_RV_TABLE) == 27
    assert share == pytest.approx(13 / 27)
    assert share < 0.9
