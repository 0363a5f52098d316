"""Log-returns, extreme-value screening, the |r| volatility proxy and block partitioning."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ingest import BarSeries

ABS_THRESHOLD = 0.2
Z_THRESHOLD = 6.0


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    values: np.ndarray
    frequency_min: int = 1
    year: int = 0

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True, eq=False)
class VolSeries:
    values: np.ndarray
    frequency_min: int = 1
    year: int = 0

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class ScreeningReport:
    abs_flags: list[int]
    z_flags: list[int]
    mean: float
    std: float
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "n_abs_flags": len(self.abs_flags),
            "n_z_flags": len(self.z_flags),
            "abs_flags": self.abs_flags,
            "z_flags": self.z_flags,
            "mean": self.mean,
            "std": self.std,
            "degenerate": self.degenerate,
        }


@dataclass(frozen=True)
class PartitionPlan:
    n_points: int
    k_opt: int
    block_len: int
    used_len: int

    def truncate(self, x: np.ndarray, drop: str = "tail") -> np.ndarray:
        """Keep ``used_len`` points, discarding from the tail (default) or the head."""
        x = np.asarray(x)
        if x.size != self.n_points:
            raise ValueError(f"plan built for {self.n_points} points, got {x.size}")
        if drop == "tail":
            return x[: self.used_len]
        if drop == "head":
            return x[x.size - self.used_len :]
        raise ValueError(f"drop must be 'tail' or 'head', got {drop!r}")


def log_returns(bars: BarSeries | np.ndarray, frequency_min: int | None = None, year: int | None = None) -> ReturnSeries:
    """First differences of log close over consecutive retained bars (gaps are not bridged out)."""
    if isinstance(bars, BarSeries):
        close = bars.bars.close
        frequency_min = frequency_min or bars.frequency_min
        year = year if year is not None else bars.year
    else:
        close = np.asarray(bars, dtype=float)
    if close.size < 2:
        raise ValueError("need at least two bars to form a return")
    if np.any(~(close > 0)):
        raise ValueError("closing prices must be strictly positive")
    r = np.diff(np.log(close))
    return ReturnSeries(r, frequency_min or 1, year or 0)


def screen_returns(returns: ReturnSeries) -> ScreeningReport:
    r = returns.values
    if r.size == 0:
        raise ValueError("empty return series")
    abs_flags = np.flatnonzero(np.abs(r) > ABS_THRESHOLD).tolist()
    mean = float(r.mean())
    std = float(r.std())
    if std == 0.0:
        return ScreeningReport(abs_flags, [], mean, std, degenerate=True)
    z = (r - mean) / std
    return ScreeningReport(abs_flags, np.flatnonzero(np.abs(z) > Z_THRESHOLD).tolist(), mean, std)


def realised_volatility(returns: ReturnSeries | VolSeries) -> VolSeries:
    if len(returns) == 0:
        raise ValueError("empty return series")
    return VolSeries(np.abs(returns.values), returns.frequency_min, returns.year)


def partition_plan(n_points: int) -> PartitionPlan:
    """K = n = floor(sqrt(N)) equal blocks; L = K * n points are used."""
    if n_points < 4:
        raise ValueError(f"need at least 4 points to partition, got {n_points}")
    k = math.isqrt(n_points)
    return PartitionPlan(n_points, k, k, k * k)
