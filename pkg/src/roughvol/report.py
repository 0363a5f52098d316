"""Table and plot-data emission.

Every row carries its :class:`ConfigKey`. Tables are written as CSV and JSON,
per (year, frequency) under ``out/<year>/<freq>/`` and aggregated at the top
of ``out``. Floats use Python's shortest round-trip representation, so equal
inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats

SERIES_KINDS = ("log_returns", "realised_vol")

# column layout per schema (key columns first); mirrors the published tables
_KEY_COLUMNS = ("frequency_min", "year", "series_kind")
SCHEMAS: dict[str, tuple[str, ...]] = {
    "completeness": ("frequency_min", "year", "valid_bars", "expected_bars", "completeness_pct", "retained"),
    "gaps": ("frequency_min", "year", "total_missing_minutes", "long_gap_count"),
    "logw": _KEY_COLUMNS
    + ("n_points", "k_opt", "n_opt", "used_len", "standard_min", "standard_max", "wide_min", "wide_max",
       "p_star", "h", "n_crossings"),
    "adf": _KEY_COLUMNS + ("n_obs", "adf_stat", "p_value", "stationary", "lags_used"),
    "rolling": _KEY_COLUMNS + ("n_obs", "rolling_window", "rolling_mean_std", "rolling_var_std"),
    "breaks": _KEY_COLUMNS + ("n_obs", "n_breaks", "break_indices"),
}
_SPECTRUM_COLUMNS = _KEY_COLUMNS + (
    "orig_min", "orig_max", "orig_mean", "orig_width",
    "shuf_min", "shuf_max", "shuf_mean", "shuf_width",
    "width_ratio", "orig_mean_r2",
)
for _s in ("mfdfa", "moments", "leaders"):
    SCHEMAS[_s] = _SPECTRUM_COLUMNS
SPECTRUM_SCHEMAS = ("mfdfa", "moments", "leaders")


class MixedParametersError(ValueError):
    """Rows destined for one table were computed under different settings."""


@dataclass(frozen=True)
class ConfigKey:
    year: int
    frequency_min: int
    series_kind: str | None = None  # None for bar-level tables (completeness, gaps)

    def __post_init__(self):
        if self.series_kind is not None and self.series_kind not in SERIES_KINDS:
            raise ValueError(f"series_kind must be one of {SERIES_KINDS} or None, got {self.series_kind!r}")

    @property
    def sort_key(self) -> tuple:
        return (self.frequency_min, self.year, self.series_kind or "")

    def as_dict(self) -> dict:
        d = {"frequency_min": self.frequency_min, "year": self.year}
        if self.series_kind is not None:
            d["series_kind"] = self.series_kind
        return d


@dataclass(frozen=True)
class TableRow:
    key: ConfigKey
    schema: str
    values: dict
    params: dict = field(default_factory=dict)
    detail: dict | None = None  # JSON-only payload, e.g. per-q spectra


@dataclass(frozen=True)
class RunManifest:
    params: dict
    inputs: dict
    files: dict
    version: str
    excluded: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    complete: bool = True

    def to_json(self) -> str:
        return dumps(
            {
                "tool": "roughvol",
                "version": self.version,
                "complete": self.complete,
                "params": self.params,
                "inputs": self.inputs,
                "excluded": self.excluded,
                "errors": self.errors,
                "files": self.files,
            }
        )


def _plain(v):
    """JSON-safe value: numpy scalars unwrapped, non-finite floats spelled out."""
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, np.ndarray):
        return [_plain(u) for u in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_plain(u) for u in v]
    if isinstance(v, dict):
        return {str(k): _plain(u) for k, u in v.items()}
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def dumps(obj) -> str:
    return json.dumps(_plain(obj), indent=1, allow_nan=False) + "\n"


def _cell(v) -> str:
    v = _plain(v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, list):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def to_csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def write_atomic(path, text: str) -> str:
    """Write through a temporary sibling then rename; returns the sha256 of the bytes."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = text.encode()
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)
    return hashlib.sha256(data).hexdigest()


def sha256_file(path, chunk: int = 1 << 20) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        while block := f.read(chunk):
            h.update(block)
    return h.hexdigest()


def _table_payload(schema: str, rows: list[TableRow], params: dict) -> tuple[str, str]:
    columns = SCHEMAS[schema]
    flat = []
    for r in rows:
        missing = set(columns) - set(r.key.as_dict()) - set(r.values)
        if missing - {"series_kind"}:
            raise ValueError(f"{schema} row for {r.key} lacks columns {sorted(missing)}")
        flat.append({**r.key.as_dict(), **r.values})
    records = []
    for r, f in zip(rows, flat):
        rec = {c: f.get(c) for c in columns}
        if r.detail is not None:
            rec["detail"] = r.detail
        records.append(rec)
    payload = {"schema": schema, "columns": list(columns), "params": params, "rows": records}
    return to_csv(columns, flat), dumps(payload)


def emit_tables(rows: list[TableRow], schema: str, out) -> dict[str, str]:
    """Write one schema's rows per (year, frequency) and as an aggregate table.

    Rows are ordered by frequency, then year, then series kind. All rows must
    share one parameter snapshot. Returns ``{relative path: sha256}``.
    """
    if schema not in SCHEMAS:
        raise ValueError(f"unknown schema {schema!r}; expected one of {sorted(SCHEMAS)}")
    rows = [r for r in rows if r.schema == schema]
    if not rows:
        raise ValueError(f"no results for schema {schema!r}")
    params = rows[0].params
    for r in rows[1:]:
        if r.params != params:
            raise MixedParametersError(
                f"{schema}: rows for {rows[0].key} and {r.key} were computed with different parameters"
            )
    rows = sorted(rows, key=lambda r: r.key.sort_key)
    keys = [r.key for r in rows]
    if len(set(keys)) != len(keys):
        raise ValueError(f"{schema}: duplicate configuration rows")
    out = Path(out)
    written = {}
    groups: dict[tuple[int, int], list[TableRow]] = {}
    for r in rows:
        groups.setdefault((r.key.year, r.key.frequency_min), []).append(r)
    for (year, freq), grp in groups.items():
        csv_text, json_text = _table_payload(schema, grp, params)
        for ext, text in (("csv", csv_text), ("json", json_text)):
            rel = f"{year}/{freq}/{schema}.{ext}"
            written[rel] = write_atomic(out / rel, text)
    csv_text, json_text = _table_payload(schema, rows, params)
    for ext, text in (("csv", csv_text), ("json", json_text)):
        rel = f"{schema}.{ext}"
        written[rel] = write_atomic(out / rel, text)
    return written


def emit_spectrum_per_q(rows: list[TableRow], schema: str, out) -> dict[str, str]:
    """Long-format per-q table (one line per configuration and q) for a spectrum schema."""
    rows = sorted((r for r in rows if r.schema == schema and r.detail), key=lambda r: r.key.sort_key)
    if not rows:
        return {}
    columns = _KEY_COLUMNS + ("q", "original", "shuffled", "r_squared")
    flat = []
    for r in rows:
        d = r.detail
        for i, q in enumerate(d["q"]):
            flat.append({**r.key.as_dict(), "q": q, "original": d["original"][i],
                         "shuffled": d["shuffled"][i], "r_squared": d["r_squared"][i]})
    rel = f"{schema}_per_q.csv"
    return {rel: write_atomic(Path(out) / rel, to_csv(columns, flat))}


# ---------------------------------------------------------------- plot data


@dataclass(frozen=True, eq=False)
class PlotData:
    kind: str
    x: np.ndarray
    y: np.ndarray
    x_label: str
    y_label: str
    config: dict = field(default_factory=dict)


def emit_plot_data(plot: PlotData, path) -> dict[str, str]:
    """Two-column ``x,y`` CSV plus a JSON sidecar naming the axes and configuration."""
    x = np.asarray(plot.x, dtype=float)
    y = np.asarray(plot.y, dtype=float)
    if x.size == 0 or x.shape != y.shape:
        raise ValueError("plot data must be nonempty with matching x and y")
    path = Path(path)
    csv_path = path.with_suffix(".csv")
    meta_path = path.with_suffix(".json")
    body = to_csv(("x", "y"), ({"x": a, "y": b} for a, b in zip(x.tolist(), y.tolist())))
    meta = {"kind": plot.kind, "x": plot.x_label, "y": plot.y_label, "n": int(x.size), "config": plot.config,
            "data": csv_path.name}
    return {str(csv_path): write_atomic(csv_path, body), str(meta_path): write_atomic(meta_path, dumps(meta))}


def qq_pairs(sample, cap: int = 10_000, standardise: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """(normal quantiles, sample quantiles) at Hazen positions ``(i + 0.5) / m``.

    ``m`` is the sample size capped at ``cap``. When ``m`` equals the sample
    size the sample quantiles are exactly the order statistics.
    """
    s = np.asarray(sample, dtype=float)
    if s.size == 0:
        raise ValueError("empty sample")
    if standardise:
        sd = s.std()
        s = (s - s.mean()) / sd if sd > 0 else s - s.mean()
    m = min(s.size, cap)
    probs = (np.arange(m) + 0.5) / m
    if m == s.size:
        sq = np.sort(s)
    else:
        sq = np.quantile(s, probs, method="hazen")
    return stats.norm.ppf(probs), sq


def z_histogram(sample, bins: int = 100) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Density-normalised histogram of z-scores: (bin centres, densities, edges)."""
    s = np.asarray(sample, dtype=float)
    sd = s.std()
    if s.size == 0 or sd == 0:
        raise ValueError("z-scores need a nonempty, non-constant sample")
    z = (s - s.mean()) / sd
    dens, edges = np.histogram(z, bins=bins, density=True)
    return 0.5 * (edges[:-1] + edges[1:]), dens, edges


def write_manifest(manifest: RunManifest, out) -> str:
    return write_atomic(Path(out) / "manifest.json", manifest.to_json())
