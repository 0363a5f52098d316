"""Minute OHLCV loading, 90-day window selection, resampling and audits."""

from __future__ import annotations

import calendar
import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

log = logging.getLogger(__name__)

MINUTE = 60
DAY_MINUTES = 1440
WINDOW_MINUTES = 129_600  # 90 days
FREQUENCIES = (1, 5, 10, 15)
COMPLETENESS_THRESHOLD = 90.0
LONG_GAP_MINUTES = 60

_COLUMNS = ("timestamp", "open", "high", "low", "close", "volume")


@dataclass(frozen=True)
class MinuteBar:
    timestamp: int
    open: float
    high: float
    low: float
    close: float
    volume: float


@dataclass(frozen=True)
class LoadReport:
    rows_read: int
    dropped_bad_close: int = 0
    dropped_inconsistent: int = 0
    duplicates: int = 0
    conflicting_duplicates: int = 0


@dataclass(frozen=True, eq=False)
class MinuteSeries:
    """Column-oriented OHLCV bars with strictly increasing, minute-aligned timestamps."""

    timestamp: np.ndarray
    open: np.ndarray
    high: np.ndarray
    low: np.ndarray
    close: np.ndarray
    volume: np.ndarray
    report: LoadReport | None = None

    def __post_init__(self):
        ts = self.timestamp
        n = ts.size
        for name in _COLUMNS[1:]:
            if getattr(self, name).shape != (n,):
                raise ValueError(f"column {name} has shape {getattr(self, name).shape}, expected ({n},)")
        if n > 1 and np.any(np.diff(ts) <= 0):
            raise ValueError("timestamps must be strictly increasing")
        if n and np.any(ts % MINUTE):
            raise ValueError("timestamps must be whole minutes (multiples of 60 s)")

    def __len__(self) -> int:
        return self.timestamp.size

    def __getitem__(self, i: int) -> MinuteBar:
        return MinuteBar(
            int(self.timestamp[i]),
            float(self.open[i]),
            float(self.high[i]),
            float(self.low[i]),
            float(self.close[i]),
            float(self.volume[i]),
        )

    @classmethod
    def from_bars(cls, bars) -> "MinuteSeries":
        bars = list(bars)
        cols = {
            name: np.array([getattr(b, name) for b in bars], dtype=np.int64 if name == "timestamp" else float)
            for name in _COLUMNS
        }
        return cls(**cols)

    def mask(self, keep: np.ndarray) -> "MinuteSeries":
        return MinuteSeries(*(getattr(self, c)[keep] for c in _COLUMNS), report=self.report)

    def between(self, start_ts: int, end_ts: int) -> "MinuteSeries":
        lo, hi = np.searchsorted(self.timestamp, [start_ts, end_ts + 1])
        return MinuteSeries(*(getattr(self, c)[lo:hi] for c in _COLUMNS), report=self.report)


@dataclass(frozen=True)
class Window:
    start_ts: int
    end_ts: int
    target_len: int = WINDOW_MINUTES
    missing_count: int = 0

    def __post_init__(self):
        if self.end_ts - self.start_ts + MINUTE != MINUTE * self.target_len:
            raise ValueError("window bounds inconsistent with target_len")
        if self.missing_count < 0:
            raise ValueError("missing_count must be non-negative")

    @property
    def year(self) -> int:
        return pd.Timestamp(self.start_ts, unit="s").year

    @classmethod
    def starting_at(cls, start_ts: int, target_len: int = WINDOW_MINUTES, missing_count: int = 0) -> "Window":
        return cls(start_ts, start_ts + MINUTE * (target_len - 1), target_len, missing_count)


@dataclass(frozen=True, eq=False)
class BarSeries:
    frequency_min: int
    bars: MinuteSeries
    source_window: Window

    def __len__(self) -> int:
        return len(self.bars)

    @property
    def year(self) -> int:
        return self.source_window.year


@dataclass(frozen=True)
class CompletenessReport:
    valid_bars: int
    expected_bars: int
    ratio_pct: float
    retained: bool


@dataclass(frozen=True)
class GapReport:
    total_missing_minutes: int
    long_gaps: list[tuple[int, int]] = field(default_factory=list)

    @property
    def long_gap_count(self) -> int:
        return len(self.long_gaps)


def load_minute_csv(path, strict: bool = False) -> MinuteSeries:
    """Read a Bitstamp-style minute CSV (optionally gzip-compressed).

    Rows with missing or non-positive close, or with OHLC values that violate
    ``low <= open, close <= high``, are dropped and counted in the attached
    :class:`LoadReport`. Duplicate timestamps keep the last occurrence; with
    ``strict=True`` duplicates carrying different values raise instead.
    """
    df = pd.read_csv(path)
    rename = {}
    for col in df.columns:
        key = col.strip().lower()
        if key == "unix":
            key = "timestamp"
        rename[col] = key
    df = df.rename(columns=rename)
    missing = [c for c in _COLUMNS if c not in df.columns]
    if missing:
        raise ValueError(f"{path}: missing columns {missing}")
    df = df[list(_COLUMNS)]
    rows_read = len(df)

    df = df.dropna(subset=["timestamp"])
    ts = df["timestamp"].to_numpy(dtype=float)
    if np.any(ts % MINUTE):
        raise ValueError(f"{path}: timestamps are not aligned to whole minutes")
    df = df.assign(timestamp=ts.astype(np.int64))

    bad_close = df["close"].isna() | ~(df["close"] > 0)
    df = df[~bad_close]
    df = df.fillna({"volume": 0.0})
    prices = df[["open", "high", "low", "close"]]
    inconsistent = prices.isna().any(axis=1) | (df["low"] > prices[["open", "close"]].min(axis=1)) | (
        df["high"] < prices[["open", "close"]].max(axis=1)
    ) | (df["volume"] < 0)
    df = df[~inconsistent]

    df = df.sort_values("timestamp", kind="stable")
    dup_mask = df["timestamp"].duplicated(keep="last")
    n_dup = int(dup_mask.sum())
    n_conflict = 0
    if n_dup:
        distinct = df.drop_duplicates(keep="last")
        n_conflict = int(distinct["timestamp"].duplicated(keep="last").sum())
        if n_conflict and strict:
            raise ValueError(f"{path}: {n_conflict} duplicate timestamps with conflicting values")
        df = df[~dup_mask]

    report = LoadReport(
        rows_read=rows_read,
        dropped_bad_close=int(bad_close.sum()),
        dropped_inconsistent=int(inconsistent.sum()),
        duplicates=n_dup,
        conflicting_duplicates=n_conflict,
    )
    if n_dup or report.dropped_bad_close or report.dropped_inconsistent:
        log.info("load %s: %s", path, report)
    return MinuteSeries(
        df["timestamp"].to_numpy(np.int64),
        *(df[c].to_numpy(float) for c in _COLUMNS[1:]),
        report=report,
    )


def _year_bounds(year: int) -> tuple[int, int]:
    start = calendar.timegm((year, 1, 1, 0, 0, 0))
    end = calendar.timegm((year + 1, 1, 1, 0, 0, 0)) - MINUTE
    return start, end


def _missing_by_start(series: MinuteSeries, starts: np.ndarray, target_len: int, origin: int, span: int) -> np.ndarray:
    present = np.zeros(span + 1, dtype=np.int64)
    sub = series.between(origin, origin + MINUTE * (span - 1))
    idx = (sub.timestamp - origin) // MINUTE
    present[idx + 1] = 1
    cum = np.cumsum(present)
    offs = (starts - origin) // MINUTE
    return target_len - (cum[offs + target_len] - cum[offs])


def select_best_window(
    series: MinuteSeries, year: int, target_len: int = WINDOW_MINUTES, step: int = DAY_MINUTES
) -> Window:
    """Return the ``target_len``-minute window in ``year`` with the fewest missing minutes.

    Candidate starts sit on midnight UTC and advance by ``step`` minutes. The
    whole window must lie inside both the calendar year and the span covered by
    the data. Ties go to the most recent start.
    """
    if target_len <= 0:
        raise ValueError("target_len must be positive")
    if len(series) == 0:
        raise ValueError("empty series")
    y0, y1 = _year_bounds(year)
    lo = max(y0, int(series.timestamp[0]) // (DAY_MINUTES * MINUTE) * DAY_MINUTES * MINUTE)
    hi = min(y1, int(series.timestamp[-1]))
    last_start = hi - MINUTE * (target_len - 1)
    if last_start < lo:
        raise ValueError(f"no {target_len}-minute window fits inside the {year} data span")
    starts = np.arange(lo, last_start + 1, MINUTE * step, dtype=np.int64)
    span = (hi - lo) // MINUTE + 1
    missing = _missing_by_start(series, starts, target_len, lo, span)
    best = missing.min()
    chosen = int(np.flatnonzero(missing == best)[-1])
    return Window.starting_at(int(starts[chosen]), target_len, int(best))


def _valid_minutes(series: MinuteSeries) -> np.ndarray:
    return (series.close > 0) & (series.volume > 0)


def resample(window_series: MinuteSeries, freq_min: int, window: Window | None = None) -> BarSeries:
    """Aggregate valid 1-minute bars into ``freq_min`` bars stamped at interval start.

    A minute is valid when its close is positive and its volume non-zero. An
    interval is kept only if all ``freq_min`` of its minutes are valid.
    """
    if freq_min <= 0 or 60 % freq_min:
        raise ValueError(f"frequency must divide 60, got {freq_min}")
    if window is not None:
        window_series = window_series.between(window.start_ts, window.end_ts)
    else:
        ts = window_series.timestamp
        start = int(ts[0]) if ts.size else 0
        n = int((ts[-1] - start) // MINUTE + 1) if ts.size else 1
        window = Window.starting_at(start, n, 0)
    valid = window_series.mask(_valid_minutes(window_series))
    if freq_min == 1:
        return BarSeries(1, valid, window)

    width = freq_min * MINUTE
    slot = (valid.timestamp - window.start_ts) // width
    n_slots = window.target_len // freq_min
    in_range = (slot >= 0) & (slot < n_slots)
    valid = valid.mask(in_range)
    slot = slot[in_range]
    counts = np.bincount(slot, minlength=n_slots)
    full = np.flatnonzero(counts == freq_min)
    keep = np.isin(slot, full)
    src = valid.mask(keep)
    # each kept slot holds exactly freq_min consecutive rows
    shape = (full.size, freq_min)
    close = src.close.reshape(shape)
    bars = MinuteSeries(
        window.start_ts + full.astype(np.int64) * width,
        src.open.reshape(shape)[:, 0].copy(),
        src.high.reshape(shape).max(axis=1),
        src.low.reshape(shape).min(axis=1),
        close[:, -1].copy(),
        src.volume.reshape(shape).sum(axis=1),
    )
    return BarSeries(freq_min, bars, window)


def completeness(bars: BarSeries, freq_min: int | None = None, window: Window | None = None) -> CompletenessReport:
    freq_min = freq_min or bars.frequency_min
    window = window or bars.source_window
    expected = window.target_len // freq_min
    valid = len(bars)
    ratio = 100.0 * valid / expected
    return CompletenessReport(valid, expected, ratio, ratio >= COMPLETENESS_THRESHOLD)


def detect_gaps(bars: BarSeries) -> GapReport:
    """Missing-interval audit relative to the source window.

    Long gaps are maximal runs of consecutive missing intervals (including
    runs touching the window edges) lasting more than an hour.
    """
    f = bars.frequency_min
    window = bars.source_window
    n_slots = window.target_len // f
    slot = (bars.bars.timestamp - window.start_ts) // (f * MINUTE)
    slot = slot[(slot >= 0) & (slot < n_slots)]
    total = f * (n_slots - slot.size)
    bounds = np.concatenate([[-1], slot, [n_slots]])
    run = np.diff(bounds) - 1
    gaps = []
    for i in np.flatnonzero(run * f > LONG_GAP_MINUTES):
        start = window.start_ts + int(bounds[i] + 1) * f * MINUTE
        gaps.append((start, int(run[i]) * f))
    return GapReport(int(total), gaps)
