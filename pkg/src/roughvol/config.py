"""Run configuration: defaults, optional key=value file, command-line overrides.

Precedence is flags > file > defaults. Environment variables are never read,
so a run is fully described by its :class:`RunConfig`.
"""

from __future__ import annotations

import dataclasses
import re
import typing
from dataclasses import dataclass
from pathlib import Path

from .ingest import FREQUENCIES

YEARS = tuple(range(2017, 2025))
SERIES_CHOICES = {"ret": ("log_returns",), "rv": ("realised_vol",), "both": ("log_returns", "realised_vol")}


@dataclass(frozen=True)
class RunConfig:
    input: str | None = None
    out: str = "out"
    years: tuple[int, ...] = YEARS
    freqs: tuple[int, ...] = FREQUENCIES
    series: str = "both"
    grid: str = "standard"
    q_step: float = 0.5
    q_max: float = 4.0
    mfdfa_scales: tuple[int, ...] | None = None
    moment_lags: tuple[int, ...] | None = None
    detrend_order: int = 2
    wavelet: str = "db3"
    k_step: int | None = None
    seed: int = 0
    shuffles: int = 10
    jobs: int = 1
    force_incomplete: bool = False
    methods: tuple[str, ...] = ("mfdfa", "moments", "wavelet_leaders")
    max_breaks: int = 5
    min_segment: int = 20

    def __post_init__(self):
        if self.series not in SERIES_CHOICES:
            raise ValueError(f"series must be one of {sorted(SERIES_CHOICES)}, got {self.series!r}")
        if self.grid not in ("standard", "wide"):
            raise ValueError(f"grid must be 'standard' or 'wide', got {self.grid!r}")
        bad = [f for f in self.freqs if f <= 0 or 60 % f]
        if bad:
            raise ValueError(f"frequencies must divide 60 minutes, got {bad}")
        if not 1 <= self.detrend_order <= 3:
            raise ValueError("detrend_order must be 1, 2 or 3")
        if self.shuffles < 1:
            raise ValueError("shuffles must be at least 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.q_step <= 0 or self.q_max <= 0:
            raise ValueError("q_step and q_max must be positive")
        unknown = set(self.methods) - {"mfdfa", "moments", "wavelet_leaders"}
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}")

    @property
    def series_kinds(self) -> tuple[str, ...]:
        return SERIES_CHOICES[self.series]

    def snapshot(self) -> dict:
        """Plain-JSON view used as the manifest parameter record."""
        return {k: list(v) if isinstance(v, tuple) else v for k, v in dataclasses.asdict(self).items()}


_HINTS = typing.get_type_hints(RunConfig)


def _int_range(text: str) -> range:
    """``"2019-2021"`` -> 2019..2021; a plain integer -> itself."""
    m = re.fullmatch(r"(-?\d+)-(-?\d+)", text)
    lo, hi = (int(m[1]), int(m[2])) if m else (int(text), int(text))
    return range(lo, hi + 1)


def _convert(name: str, raw: str):
    hint = _HINTS[name]
    raw = raw.strip()
    args = typing.get_args(hint)
    optional = type(None) in args
    if optional and raw.lower() in ("", "none"):
        return None
    base = next((a for a in args if a is not type(None)), hint) if optional else hint
    origin = typing.get_origin(base)
    if origin is tuple:
        item = typing.get_args(base)[0]
        parts = [p for p in raw.replace(",", " ").split() if p]
        if item is int:
            return tuple(v for p in parts for v in _int_range(p))
        return tuple(item(p) for p in parts)
    if base is bool:
        low = raw.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"{name}: cannot read {raw!r} as a boolean")
    if base is str:
        return raw
    return base(raw)


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines. ``#`` starts a comment; dashes in keys read as underscores."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        if key not in _HINTS:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        out[key] = _convert(key, value)
    return out


def load_config(path=None, overrides: dict | None = None) -> RunConfig:
    values = parse_config_text(Path(path).read_text()) if path else {}
    for k, v in (overrides or {}).items():
        if k not in _HINTS:
            raise ValueError(f"unknown setting {k!r}")
        if v is not None:
            values[k] = v
    return RunConfig(**values)


def from_snapshot(snap: dict) -> RunConfig:
    vals = {k: tuple(v) if isinstance(v, list) else v for k, v in snap.items()}
    return RunConfig(**vals)


__all__ = ["RunConfig", "load_config", "parse_config_text", "from_snapshot"]
