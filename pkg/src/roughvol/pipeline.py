"""End-to-end driver: ingest, per-configuration analysis, report emission."""

from __future__ import annotations

import logging
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

from . import __version__
from . import multifractal as mf
from . import pvar, stationarity
from .config import RunConfig
from .ingest import completeness, detect_gaps, load_minute_csv, resample, select_best_window
from .report import (
    SPECTRUM_SCHEMAS,
    ConfigKey,
    PlotData,
    RunManifest,
    TableRow,
    dumps,
    emit_plot_data,
    emit_spectrum_per_q,
    emit_tables,
    qq_pairs,
    sha256_file,
    to_csv,
    write_atomic,
    write_manifest,
    z_histogram,
)
from .series import ReturnSeries, log_returns, partition_plan, realised_volatility, screen_returns

log = logging.getLogger(__name__)

STAGES = ("pvar", "stationarity", "mfa")
_METHOD_SCHEMA = {"mfdfa": "mfdfa", "moments": "moments", "wavelet_leaders": "leaders"}
_STAGE_SCHEMAS = {
    "pvar": ("logw",),
    "stationarity": ("adf", "rolling", "breaks"),
    "mfa": SPECTRUM_SCHEMAS,
}


@dataclass(frozen=True, eq=False)
class Job:
    key: ConfigKey
    values: np.ndarray


@dataclass
class JobOutput:
    key: ConfigKey
    rows: list = field(default_factory=list)
    plots: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)  # relative path -> raw text or JSON-able payload
    error: str | None = None


@dataclass
class PipelineResult:
    exit_code: int
    manifest: RunManifest
    rows: list
    excluded: list


def job_seed(master: int, key: ConfigKey, method: str) -> int:
    kind = 0 if key.series_kind == "log_returns" else 1
    ss = np.random.SeedSequence(master, spawn_key=(key.year, key.frequency_min, kind, mf.METHODS.index(method)))
    return int(ss.generate_state(1)[0])


def _params(cfg: RunConfig, schema: str) -> dict:
    if schema == "logw":
        return {"grid": cfg.grid, "grid_step": pvar.GRID_STEP, "k_step": cfg.k_step}
    if schema == "adf":
        return {"regression": "n", "max_lag": "schwert", "ic": "aic", "level": 0.05}
    if schema == "rolling":
        return {"fraction": stationarity.ROLLING_FRACTION, "min_window": stationarity.MIN_ROLLING_WINDOW}
    if schema == "breaks":
        return {"max_breaks": cfg.max_breaks, "min_segment": cfg.min_segment, "cost": "l2"}
    if schema in SPECTRUM_SCHEMAS:
        p = {"q_step": cfg.q_step, "q_max": cfg.q_max, "shuffles": cfg.shuffles, "seed": cfg.seed}
        if schema == "mfdfa":
            p.update(detrend_order=cfg.detrend_order, scales=cfg.mfdfa_scales)
        elif schema == "moments":
            p.update(lags=cfg.moment_lags)
        else:
            p.update(wavelet=cfg.wavelet)
        return p
    return {}


def _spectrum_kwargs(cfg: RunConfig, method: str) -> dict:
    include_zero = method != "moments"
    kw = {"qs": mf.q_grid(cfg.q_step, cfg.q_max, include_zero)}
    if method == "mfdfa":
        kw["detrend_order"] = cfg.detrend_order
        if cfg.mfdfa_scales:
            kw["scales"] = np.asarray(cfg.mfdfa_scales)
    elif method == "moments" and cfg.moment_lags:
        kw["lags"] = np.asarray(cfg.moment_lags)
    elif method == "wavelet_leaders":
        kw["wavelet"] = cfg.wavelet
    return kw


def _plot_cfg(key: ConfigKey, **extra) -> dict:
    return {**key.as_dict(), **extra}


def _pvar_stage(x, key, cfg, out: JobOutput):
    plan = partition_plan(x.size)
    grids = {g: pvar.PGrid.make(g) for g in ("standard", "wide")}
    curves = {g: pvar.logw_curve(plan.truncate(x), plan, grid) for g, grid in grids.items()}
    for g, c in curves.items():
        body = to_csv(("p", "inv_p", "logW"), ({"p": a, "inv_p": 1.0 / a, "logW": b}
                                               for a, b in zip(c.p.tolist(), c.logw.tolist())))
        out.extras[f"{key.year}/{key.frequency_min}/logw_curve_{g}.csv"] = body
    main = curves[cfg.grid]
    est = pvar.find_zero_crossing(main)
    out.rows.append(TableRow(key, "logw", {
        "n_points": plan.n_points, "k_opt": plan.k_opt, "n_opt": plan.block_len, "used_len": plan.used_len,
        "standard_min": curves["standard"].min_logw, "standard_max": curves["standard"].max_logw,
        "wide_min": curves["wide"].min_logw, "wide_max": curves["wide"].max_logw,
        "p_star": est.p_star, "h": est.h, "n_crossings": est.n_crossings,
    }, _params(cfg, "logw")))
    out.plots.append(PlotData("logw_vs_inv_p", 1.0 / main.p, main.logw, "1/p", "log W(L,K,p)",
                              _plot_cfg(key, grid=cfg.grid, k=plan.k_opt)))
    ks = pvar.k_grid(x.size, key.frequency_min, step=cfg.k_step)
    pts = pvar.h_vs_k_diagnostic(x, ks, grids[cfg.grid])
    if pts:
        h = np.array([np.nan if p.h is None else p.h for p in pts])
        out.plots.append(PlotData("h_vs_k", np.array([p.k for p in pts], float), h, "K", "H (zero crossing)",
                                  _plot_cfg(key, grid=cfg.grid)))
        hr = np.array([np.nan if p.h_regression is None else p.h_regression for p in pts])
        out.plots.append(PlotData("h_vs_k_regression", np.array([p.k for p in pts], float), hr, "K",
                                  "H (straight-line fit of log W on 1/p)", _plot_cfg(key, grid=cfg.grid)))


def _stationarity_stage(x, key, cfg, out: JobOutput):
    adf = stationarity.adf_test(x)
    out.rows.append(TableRow(key, "adf", {
        "n_obs": x.size, "adf_stat": adf.stat, "p_value": adf.p_value,
        "stationary": adf.stationary, "lags_used": adf.lags_used,
    }, _params(cfg, "adf")))
    roll = stationarity.rolling_stability(x)
    out.rows.append(TableRow(key, "rolling", {
        "n_obs": x.size, "rolling_window": roll.window,
        "rolling_mean_std": roll.mean_std, "rolling_var_std": roll.var_std,
    }, _params(cfg, "rolling")))
    bp = stationarity.binary_segmentation(x, cfg.max_breaks, cfg.min_segment)
    out.rows.append(TableRow(key, "breaks", {
        "n_obs": x.size, "n_breaks": len(bp.indices), "break_indices": bp.indices,
    }, _params(cfg, "breaks")))


def _mfa_stage(x, key, cfg, out: JobOutput):
    for method in cfg.methods:
        schema = _METHOD_SCHEMA[method]
        cmp = mf.shuffle_comparison(x, method, seed=job_seed(cfg.seed, key, method), n_shuffles=cfg.shuffles,
                                    **_spectrum_kwargs(cfg, method))
        o, s = cmp.original.summary, cmp.shuffled.summary
        detail = {
            "q": cmp.original.qs, "original": cmp.original.exponents, "shuffled": cmp.shuffled.exponents,
            "r_squared": cmp.original.r_squared, "scales": cmp.original.scales,
            "excluded": cmp.original.excluded,
        }
        out.rows.append(TableRow(key, schema, {
            "orig_min": o.min, "orig_max": o.max, "orig_mean": o.mean, "orig_width": o.width,
            "shuf_min": s.min, "shuf_max": s.max, "shuf_mean": s.mean, "shuf_width": s.width,
            "width_ratio": cmp.width_ratio, "orig_mean_r2": float(np.mean(cmp.original.r_squared)),
        }, _params(cfg, schema), detail))
        label = "H(q)" if method == "mfdfa" else "zeta_q"
        for side, spec in (("original", cmp.original), ("shuffled", cmp.shuffled)):
            out.plots.append(PlotData(f"{schema}_{side}", spec.qs, spec.exponents, "q", label,
                                      _plot_cfg(key, method=method, side=side)))


def analyse(job: Job, cfg: RunConfig, stages=STAGES) -> JobOutput:
    """Every requested diagnostic for one (year, frequency, series kind) triple."""
    key = job.key
    out = JobOutput(key)
    x = np.asarray(job.values, dtype=float)
    try:
        if key.series_kind == "log_returns":
            scr = screen_returns(ReturnSeries(x, key.frequency_min, key.year))
            out.extras[f"{key.year}/{key.frequency_min}/screening.json"] = {**key.as_dict(), **scr.to_dict()}
            if not scr.degenerate:
                out.plots.append(PlotData("qq_normal", *qq_pairs(x), "normal quantile", "sample z quantile",
                                          _plot_cfg(key)))
                centres, dens, _ = z_histogram(x)
                out.plots.append(PlotData("z_histogram", centres, dens, "z-score", "density", _plot_cfg(key)))
        if key.series_kind == "realised_vol":
            if "pvar" in stages:
                _pvar_stage(x, key, cfg, out)
            if "stationarity" in stages:
                _stationarity_stage(x, key, cfg, out)
        if "mfa" in stages:
            _mfa_stage(x, key, cfg, out)
    except Exception as exc:  # reported per triple; the run carries on
        log.error("%s failed: %s", key, exc)
        out.error = f"{type(exc).__name__}: {exc}"
        log.debug("%s", traceback.format_exc())
    return out


def is_single_column(path) -> bool:
    head = pd.read_csv(path, nrows=5)
    return head.shape[1] == 1


def read_single_column(path) -> np.ndarray:
    df = pd.read_csv(path)
    return df.iloc[:, 0].to_numpy(dtype=float)


def _market_jobs(cfg: RunConfig, stages):
    series = load_minute_csv(cfg.input)
    rows, jobs, excluded = [], [], []
    for year in cfg.years:
        try:
            window = select_best_window(series, year)
        except ValueError as exc:
            for f in cfg.freqs:
                excluded.append({"year": year, "frequency_min": f, "reason": str(exc)})
            continue
        sub = series.between(window.start_ts, window.end_ts)
        for f in cfg.freqs:
            bars = resample(sub, f, window)
            comp = completeness(bars)
            key = ConfigKey(year, f)
            rows.append(TableRow(key, "completeness", {
                "valid_bars": comp.valid_bars, "expected_bars": comp.expected_bars,
                "completeness_pct": round(comp.ratio_pct, 2), "retained": comp.retained,
            }, {"threshold_pct": 90.0}))
            if not comp.retained and not cfg.force_incomplete:
                excluded.append({"year": year, "frequency_min": f, "reason": f"completeness {comp.ratio_pct:.2f}%"})
                continue
            gaps = detect_gaps(bars)
            rows.append(TableRow(key, "gaps", {
                "total_missing_minutes": gaps.total_missing_minutes, "long_gap_count": gaps.long_gap_count,
            }, {"long_gap_minutes": 60}))
            if not stages or len(bars) < 3:
                continue
            r = log_returns(bars)
            if "log_returns" in cfg.series_kinds:
                jobs.append(Job(ConfigKey(year, f, "log_returns"), r.values))
            if "realised_vol" in cfg.series_kinds:
                jobs.append(Job(ConfigKey(year, f, "realised_vol"), realised_volatility(r).values))
    return rows, jobs, excluded


def _synthetic_jobs(cfg: RunConfig):
    """A single-column file is read as a return series (year 0, first frequency)."""
    r = read_single_column(cfg.input)
    f = cfg.freqs[0] if cfg.freqs else 1
    jobs = []
    if "log_returns" in cfg.series_kinds:
        jobs.append(Job(ConfigKey(0, f, "log_returns"), r))
    if "realised_vol" in cfg.series_kinds:
        jobs.append(Job(ConfigKey(0, f, "realised_vol"), np.abs(r)))
    return jobs


def _run_jobs(jobs, cfg: RunConfig, stages) -> list[JobOutput]:
    if cfg.jobs == 1 or len(jobs) <= 1:
        return [analyse(j, cfg, stages) for j in jobs]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        futures = [pool.submit(analyse, j, cfg, stages) for j in jobs]
        return [f.result() for f in futures]


def run_pipeline(cfg: RunConfig, stages=STAGES) -> PipelineResult:
    """Run the requested stages and write tables, plot data and ``manifest.json``.

    The exit code is 0 only if no configuration raised and every requested
    table was written. Results gathered before a failure are still emitted and
    the manifest is marked incomplete.
    """
    if cfg.input is None:
        raise ValueError("an input file is required")
    stages = tuple(stages)
    unknown = set(stages) - set(STAGES)
    if unknown:
        raise ValueError(f"unknown stages {sorted(unknown)}")
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)

    errors: list[dict] = []
    if is_single_column(cfg.input):
        rows, excluded, jobs = [], [], _synthetic_jobs(cfg)
    else:
        rows, jobs, excluded = _market_jobs(cfg, stages)

    outputs = _run_jobs(jobs, cfg, stages)
    files: dict[str, str] = {}
    plots = []
    for o in outputs:
        if o.error:
            errors.append({**o.key.as_dict(), "error": o.error})
        rows.extend(o.rows)
        plots.extend((o.key, p) for p in o.plots)
        for rel, payload in o.extras.items():
            files[rel] = write_atomic(out / rel, payload if isinstance(payload, str) else dumps(payload))

    schemas = [s for s in ("completeness", "gaps") if any(r.schema == s for r in rows)]
    for st in stages:
        schemas += [s for s in _STAGE_SCHEMAS[st] if s not in schemas]
    for schema in schemas:
        if not any(r.schema == schema for r in rows):
            if jobs:
                errors.append({"schema": schema, "error": "no rows produced"})
            continue
        try:
            files.update(emit_tables(rows, schema, out))
            if schema in SPECTRUM_SCHEMAS:
                files.update(emit_spectrum_per_q(rows, schema, out))
        except ValueError as exc:
            errors.append({"schema": schema, "error": str(exc)})
    for key, p in plots:
        kind = key.series_kind or "bars"
        stem = out / str(key.year) / str(key.frequency_min) / "plots" / f"{kind}_{p.kind}"
        for path, digest in emit_plot_data(p, stem).items():
            files[str(Path(path).relative_to(out))] = digest

    manifest = RunManifest(
        params=cfg.snapshot(),
        inputs={str(cfg.input): sha256_file(cfg.input)},
        files=dict(sorted(files.items())),
        version=__version__,
        excluded=excluded,
        errors=errors,
        complete=not errors,
    )
    write_manifest(manifest, out)
    return PipelineResult(0 if not errors else 1, manifest, rows, excluded)
