"""Unit-root, rolling-stability and change-point diagnostics.

The ADF regression is fitted without intercept or trend by default::

    dx_t = alpha * x_{t-1} + sum_{i=1..p} beta_i * dx_{t-i} + e_t

with ``p`` picked by AIC. Approximate p-values and critical values come from
MacKinnon's response surfaces (MacKinnon 1994, 2010) as tabulated in
``statsmodels.tsa.adfvalues``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from statsmodels.tsa.adfvalues import mackinnoncrit, mackinnonp

MIN_ROLLING_WINDOW = 10
ROLLING_FRACTION = 0.05
TIE_RTOL = 1e-12  # gains this close to the maximum count as ties


@dataclass(frozen=True)
class AdfRegression:
    alpha: float
    betas: tuple[float, ...]
    resid_var: float
    aic: float
    const: float | None = None


@dataclass(frozen=True)
class AdfResult:
    stat: float
    p_value: float
    lags_used: int
    n_obs: int
    regression: AdfRegression
    critical_values: dict = field(default_factory=dict)
    level: float = 0.05

    @property
    def stationary(self) -> bool:
        return self.p_value < self.level


@dataclass(frozen=True)
class RollingStability:
    window: int
    mean_std: float
    var_std: float


@dataclass(frozen=True)
class Breakpoints:
    indices: list[int]
    cost_before: float
    cost_after: float
    max_breaks: int = 5
    min_segment: int = 20


def schwert_max_lag(n: int) -> int:
    return int(math.floor(12.0 * (n / 100.0) ** 0.25))


def _design(x: np.ndarray, max_lag: int, first_row: int, const: bool) -> tuple[np.ndarray, np.ndarray]:
    """Rows t = first_row .. len(dx)-1 of [const?, x_{t-1}, dx_{t-1}, ..., dx_{t-max_lag}]."""
    dx = np.diff(x)
    rows = np.arange(first_row, dx.size)
    cols = [x[rows]]  # x_{t-1} aligned with dx_t = x_{t+1} - x_t
    cols += [dx[rows - i] for i in range(1, max_lag + 1)]
    if const:
        cols.insert(0, np.ones(rows.size))
    return np.column_stack(cols), dx[rows]


def _aic(ssr: float, nobs: int, k: int) -> float:
    llf = -0.5 * nobs * (math.log(2 * math.pi) + math.log(ssr / nobs) + 1.0)
    return -2.0 * llf + 2.0 * k


def adf_test(x, max_lag: int | None = None, regression: str = "n", level: float = 0.05) -> AdfResult:
    """Augmented Dickey-Fuller test with AIC lag selection.

    Lags ``0..max_lag`` are compared on a common sample; the chosen model is
    then refitted on every observation it can use. ``regression="c"`` adds an
    intercept for cross-checks against the usual library default.
    """
    x = np.asarray(x, dtype=float)
    if regression not in ("n", "c"):
        raise ValueError("regression must be 'n' or 'c'")
    const = regression == "c"
    if x.size < 20:
        raise ValueError(f"ADF needs at least 20 observations, got {x.size}")
    if np.ptp(x) == 0:
        raise ValueError("ADF is undefined for a constant series")
    if max_lag is None:
        max_lag = schwert_max_lag(x.size)
    max_lag = min(max_lag, x.size // 2 - int(const) - 2)
    if max_lag < 0:
        raise ValueError("insufficient observations after lagging")

    # nested regressions share one QR: the first j columns span the j-regressor model
    X, y = _design(x, max_lag, max_lag, const)
    q, _ = np.linalg.qr(X)
    proj = q.T @ y
    yy = float(y @ y)
    base = int(const) + 1
    best_lag, best_aic = 0, math.inf
    for lag in range(max_lag + 1):
        k = base + lag
        ssr = yy - float(proj[:k] @ proj[:k])
        aic = _aic(max(ssr, np.finfo(float).tiny), y.size, k)
        if aic < best_aic:
            best_lag, best_aic = lag, aic

    X, y = _design(x, best_lag, best_lag, const)
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ coef
    nobs, k = X.shape
    ssr = float(resid @ resid)
    if ssr <= 0:
        raise ValueError("degenerate ADF regression (perfect fit)")
    sigma2 = ssr / (nobs - k)
    xtx_inv = np.linalg.pinv(X.T @ X)
    ia = int(const)
    stat = float(coef[ia] / math.sqrt(sigma2 * xtx_inv[ia, ia]))
    reg = AdfRegression(
        alpha=float(coef[ia]),
        betas=tuple(float(b) for b in coef[ia + 1 :]),
        resid_var=sigma2,
        aic=_aic(ssr, nobs, k),
        const=float(coef[0]) if const else None,
    )
    crit = mackinnoncrit(N=1, regression=regression, nobs=nobs)
    return AdfResult(
        stat=stat,
        p_value=float(mackinnonp(stat, regression=regression, N=1)),
        lags_used=best_lag,
        n_obs=nobs,
        regression=reg,
        critical_values={"1%": float(crit[0]), "5%": float(crit[1]), "10%": float(crit[2])},
        level=level,
    )


def rolling_window(n: int) -> int:
    return max(MIN_ROLLING_WINDOW, int(math.floor(ROLLING_FRACTION * n)))


def rolling_stability(x, window: int | None = None) -> RollingStability:
    """Population std of the rolling means and rolling (ddof=1) variances over all full windows."""
    x = np.asarray(x, dtype=float)
    if x.size < 20:
        raise ValueError(f"need at least 20 observations, got {x.size}")
    w = window or rolling_window(x.size)
    if w > x.size:
        raise ValueError("window longer than series")
    xc = x - x.mean()
    c1 = np.concatenate([[0.0], np.cumsum(xc)])
    c2 = np.concatenate([[0.0], np.cumsum(xc * xc)])
    s1 = c1[w:] - c1[:-w]
    s2 = c2[w:] - c2[:-w]
    means = s1 / w
    var = np.clip((s2 - s1 * s1 / w) / (w - 1), 0.0, None)
    return RollingStability(w, float(np.std(means)), float(np.std(var)))


def _sse(c1: np.ndarray, c2: np.ndarray, a: int, b: int) -> float:
    s = c1[b] - c1[a]
    return float(c2[b] - c2[a] - s * s / (b - a))


def best_split(x, min_segment: int = 1) -> tuple[int | None, float]:
    """Split index maximising the drop in squared deviation from segment means."""
    x = np.asarray(x, dtype=float)
    n = x.size
    if n < 2 * min_segment:
        return None, 0.0
    xc = x - x.mean()
    c1 = np.concatenate([[0.0], np.cumsum(xc)])
    tau = np.arange(min_segment, n - min_segment + 1)
    if tau.size == 0:
        return None, 0.0
    left_mean = c1[tau] / tau
    right_mean = (c1[n] - c1[tau]) / (n - tau)
    gain = tau * (n - tau) / n * (left_mean - right_mean) ** 2
    top = gain.max()
    i = int(np.argmax(gain >= top - TIE_RTOL * abs(top)))  # ties go to the smallest index
    return int(tau[i]), float(gain[i])


def binary_segmentation(x, max_breaks: int = 5, min_segment: int = 20, gain_tol: float = 1e-12) -> Breakpoints:
    """Greedy L2 binary segmentation.

    Each round splits whichever current segment offers the largest cost
    reduction. Stops after ``max_breaks`` splits or once the best reduction is
    at most ``gain_tol`` times the unsegmented cost.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if n < 2 * min_segment:
        raise ValueError(f"series of length {n} cannot hold two segments of {min_segment}")
    xc = x - x.mean()
    c1 = np.concatenate([[0.0], np.cumsum(xc)])
    c2 = np.concatenate([[0.0], np.cumsum(xc * xc)])
    total = _sse(c1, c2, 0, n)
    threshold = gain_tol * total

    segments = [(0, n)]
    cache: dict[tuple[int, int], tuple[int | None, float]] = {}
    breaks: list[int] = []
    while len(breaks) < max_breaks:
        best = (None, -1.0, None)
        for seg in segments:
            if seg not in cache:
                tau, gain = best_split(x[seg[0] : seg[1]], min_segment)
                cache[seg] = (None if tau is None else seg[0] + tau, gain)
            tau, gain = cache[seg]
            if tau is None:
                continue
            tied = best[0] is not None and abs(gain - best[1]) <= TIE_RTOL * max(abs(gain), abs(best[1]))
            if (gain > best[1] and not tied) or (tied and tau < best[0]):
                best = (tau, gain, seg)
        tau, gain, seg = best
        if tau is None or gain <= threshold:
            break
        segments.remove(seg)
        segments += [(seg[0], tau), (tau, seg[1])]
        breaks.append(tau)
    after = sum(_sse(c1, c2, a, b) for a, b in segments)
    return Breakpoints(sorted(breaks), total, after, max_breaks, min_segment)
