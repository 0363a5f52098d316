"""Normalised p-variation statistic, log W curves and zero-crossing roughness.

``W(L, K, p) = (1/K) sum_j |S_j|^p`` where ``S_j`` are the sums over ``K``
consecutive blocks of length ``n = L/K``. A series with a homogeneous scaling
law has ``log W`` crossing zero at a single ``p*`` and roughness ``H = 1/p*``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .series import PartitionPlan

GRID_STEP = 0.01
_GRID_BOUNDS = {"standard": (0.1, 4.0), "wide": (0.01, 4.0)}
# H-vs-K step in blocks, keyed by sampling frequency in minutes
K_STEPS = {1: 10, 5: 5, 10: 2, 15: 2}


@dataclass(frozen=True, eq=False)
class PGrid:
    kind: str
    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if v.ndim != 1 or v.size == 0 or np.any(np.diff(v) <= 0) or v[0] <= 0:
            raise ValueError("p-grid must be a non-empty, strictly increasing array of positive values")

    @classmethod
    def make(cls, kind: str = "standard", step: float = GRID_STEP) -> "PGrid":
        try:
            lo, hi = _GRID_BOUNDS[kind]
        except KeyError:
            raise ValueError(f"unknown grid kind {kind!r}; expected 'standard' or 'wide'") from None
        n = int(round((hi - lo) / step)) + 1
        return cls(kind, np.round(np.linspace(lo, hi, n), 10))

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True, eq=False)
class PVariationCurve:
    k: int
    n: int
    p: np.ndarray
    logw: np.ndarray
    grid_kind: str = "custom"

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.p.tolist(), self.logw.tolist()))

    @property
    def min_logw(self) -> float:
        return float(self.logw.min())

    @property
    def max_logw(self) -> float:
        return float(self.logw.max())


@dataclass(frozen=True)
class RoughnessEstimate:
    p_star: float | None
    h: float | None
    method: str = "zero_crossing"
    n_crossings: int = 0

    @property
    def unique(self) -> bool:
        return self.n_crossings <= 1


@dataclass(frozen=True)
class HvsKPoint:
    k: int
    n: int
    h: float | None
    p_star: float | None
    slope: float
    intercept: float
    unique: bool = True

    @property
    def h_regression(self) -> float | None:
        """Root of the straight-line fit of log W on 1/p, if the fit is not flat."""
        if self.slope == 0:
            return None
        return -self.intercept / self.slope


def block_sums(x, k: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if k <= 0 or x.size % k:
        raise ValueError(f"{k} blocks do not divide a series of length {x.size}")
    # cumsum accumulates strictly left to right, unlike the pairwise np.sum
    return np.cumsum(x.reshape(k, x.size // k), axis=1)[:, -1].copy()


def _log_w(sums: np.ndarray, p, base: float = math.e) -> np.ndarray:
    with np.errstate(divide="ignore"):
        log_abs = np.log(np.abs(sums))
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if np.any(p <= 0):
        raise ValueError("moment order p must be positive")
    # log-domain mean so that tiny or huge block sums neither underflow nor overflow
    out = logsumexp(np.multiply.outer(p, log_abs), axis=1) - math.log(sums.size)
    if base != math.e:
        out = out / math.log(base)
    return out


def w_statistic(x, k: int, p: float) -> float:
    s = block_sums(x, k)
    if p <= 0:
        raise ValueError("moment order p must be positive")
    return float(np.mean(np.abs(s) ** p))


def logw_curve(x, plan: PartitionPlan, grid: PGrid, drop: str = "tail", base: float = math.e) -> PVariationCurve:
    x = np.asarray(x, dtype=float)
    if x.size != plan.used_len:
        x = plan.truncate(x, drop)
    sums = block_sums(x, plan.k_opt)
    return PVariationCurve(plan.k_opt, plan.block_len, grid.values.copy(), _log_w(sums, grid.values, base), grid.kind)


def find_zero_crossing(curve: PVariationCurve) -> RoughnessEstimate:
    """Locate where log W changes sign along increasing p.

    Exact zeros at a grid point are taken as is; otherwise the crossing is
    interpolated linearly in (1/p, log W). With several crossings the one at
    the smallest p is returned and ``n_crossings`` records how many there were.
    """
    p, y = curve.p, curve.logw
    if p.size == 0:
        raise ValueError("empty curve")
    order = np.argsort(p)
    p, y = p[order], y[order]
    sign = np.sign(y)
    zeros = np.flatnonzero(sign == 0)
    changes = np.flatnonzero(sign[:-1] * sign[1:] < 0)
    candidates = sorted(set(zeros.tolist()) | set(changes.tolist()))
    if not candidates:
        return RoughnessEstimate(None, None, n_crossings=0)
    # a run of exact zeros counts as one crossing
    n_cross = len(changes) + int(np.sum(np.diff(np.concatenate([[0], (sign == 0).astype(int)])) == 1))
    i = candidates[0]
    if sign[i] == 0:
        p_star = float(p[i])
    else:
        u0, u1 = 1.0 / p[i], 1.0 / p[i + 1]
        u = u0 - y[i] * (u1 - u0) / (y[i + 1] - y[i])
        p_star = float(1.0 / u)
    return RoughnessEstimate(p_star, 1.0 / p_star, n_crossings=n_cross)


def k_grid(n_points: int, frequency_min: int = 1, start: int = 50, step: int | None = None) -> np.ndarray:
    """Block counts from ``start`` in frequency-specific steps, capped at 2*sqrt(N)."""
    step = step or K_STEPS.get(frequency_min, 2)
    cap = min(int(2 * math.sqrt(n_points)), n_points // 2)
    return np.arange(start, cap + 1, step)


def h_vs_k_diagnostic(x, k_values, grid: PGrid, drop: str = "tail", base: float = math.e) -> list[HvsKPoint]:
    """Roughness estimate for each block count, truncating the series per k."""
    x = np.asarray(x, dtype=float)
    inv_p = 1.0 / grid.values
    out = []
    for k in np.asarray(k_values, dtype=int):
        k = int(k)
        n = x.size // k
        if k < 2 or n < 1:
            continue
        plan = PartitionPlan(x.size, k, n, k * n)
        curve = logw_curve(x, plan, grid, drop=drop, base=base)
        est = find_zero_crossing(curve)
        slope, intercept = np.polyfit(inv_p, curve.logw, 1)
        out.append(HvsKPoint(k, n, est.h, est.p_star, float(slope), float(intercept), est.unique))
    return out
