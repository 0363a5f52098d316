"""Multifractality diagnostics: MF-DFA, structure-function scaling and wavelet leaders.

All three return a :class:`ScalingSpectrum` holding one exponent per moment
order ``q`` (``H(q)`` for MF-DFA, ``zeta_q`` otherwise) together with the
per-q goodness of fit. Shuffle controls rerun a diagnostic on random
permutations of the series.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import pywt
from scipy.special import logsumexp

log = logging.getLogger(__name__)

METHODS = ("mfdfa", "moments", "wavelet_leaders")
DEFAULT_WAVELET = "db3"
N_SCALES = 16


@dataclass(frozen=True)
class SpectrumSummary:
    min: float
    max: float
    mean: float
    width: float


@dataclass(frozen=True, eq=False)
class ScalingSpectrum:
    method: str
    qs: np.ndarray
    exponents: np.ndarray
    r_squared: np.ndarray
    scales: np.ndarray
    log_moments: np.ndarray | None = None  # (len(qs), len(scales)) regression inputs
    excluded: dict = field(default_factory=dict)

    @property
    def per_q(self) -> list[tuple[float, float, float]]:
        return list(zip(self.qs.tolist(), self.exponents.tolist(), self.r_squared.tolist()))

    @property
    def summary(self) -> SpectrumSummary:
        return spectrum_summary(self)


@dataclass(frozen=True)
class ShuffleComparison:
    original: ScalingSpectrum
    shuffled: ScalingSpectrum
    width_ratio: float | None
    seed: int
    n_shuffles: int


def q_grid(step: float = 0.5, qmax: float = 4.0, include_zero: bool = True) -> np.ndarray:
    n = int(round(2 * qmax / step)) + 1
    qs = np.round(np.linspace(-qmax, qmax, n), 10)
    return qs if include_zero else qs[qs != 0]


def log_scales(lo: int, hi: int, n: int = N_SCALES) -> np.ndarray:
    if hi < lo:
        raise ValueError(f"empty scale range [{lo}, {hi}]")
    return np.unique(np.round(np.geomspace(lo, hi, n)).astype(int))


def default_mfdfa_scales(n_points: int) -> np.ndarray:
    return log_scales(16, n_points // 8)


def default_moment_lags(n_points: int) -> np.ndarray:
    return log_scales(1, n_points // 16)


def _fit(log_x: np.ndarray, log_y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise least-squares slopes of log_y (q x scales) on log_x, with R^2."""
    xc = log_x - log_x.mean()
    sxx = xc @ xc
    yc = log_y - log_y.mean(axis=1, keepdims=True)
    slope = yc @ xc / sxx
    ss_tot = np.sum(yc * yc, axis=1)
    ss_res = np.sum((yc - np.outer(slope, xc)) ** 2, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        r2 = np.where(ss_tot > 0, 1.0 - ss_res / ss_tot, 1.0)
    return slope, r2


def spectrum_summary(spec: ScalingSpectrum) -> SpectrumSummary:
    e = np.asarray(spec.exponents, dtype=float)
    if e.size == 0:
        raise ValueError("empty spectrum")
    lo, hi = float(e.min()), float(e.max())
    return SpectrumSummary(lo, hi, float(e.mean()), hi - lo)


def profile(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise ValueError("empty series")
    return np.cumsum(x - x.mean())


def _segment_variances(y: np.ndarray, s: int, order: int) -> np.ndarray:
    """Mean squared polynomial-fit residual for the 2*floor(N/s) front and back segments."""
    n_seg = y.size // s
    front = y[: n_seg * s].reshape(n_seg, s)
    back = y[y.size - n_seg * s :].reshape(n_seg, s)
    segs = np.vstack([front, back])
    t = np.linspace(-1.0, 1.0, s)
    basis, _ = np.linalg.qr(np.vander(t, order + 1))
    resid = segs - (segs @ basis) @ basis.T
    return np.mean(resid * resid, axis=1)


def mfdfa(x, scales=None, qs=None, detrend_order: int = 2) -> ScalingSpectrum:
    """Generalised Hurst exponents H(q) by multifractal detrended fluctuation analysis.

    The profile is cut into non-overlapping windows of each scale from both
    ends, each detrended by a polynomial of ``detrend_order``. Windows with
    exactly zero residual are left out of q <= 0 averages.
    """
    x = np.asarray(x, dtype=float)
    qs = q_grid() if qs is None else np.asarray(qs, dtype=float)
    scales = default_mfdfa_scales(x.size) if scales is None else np.asarray(scales, dtype=int)
    if not 1 <= detrend_order <= 3:
        raise ValueError("detrend_order must be 1, 2 or 3")
    if scales.size < 2:
        raise ValueError("need at least two scales")
    if scales.min() <= detrend_order + 1:
        raise ValueError("scales must exceed detrend_order + 1")
    if x.size < 4 * scales.max():
        raise ValueError(f"series of length {x.size} too short for scale {scales.max()}")
    if np.var(x) == 0:
        raise ValueError("MF-DFA is undefined for a constant series")

    y = profile(x)
    log_f = np.empty((qs.size, scales.size))
    n_zero = 0
    for j, s in enumerate(scales):
        f2 = _segment_variances(y, int(s), detrend_order)
        # rounding leaves ~1e-30 residuals on exact polynomials; treat as zero
        tol = 1e-24 * max(float(np.max(y * y)), 1.0)
        zero = f2 <= tol
        with np.errstate(divide="ignore"):
            log_f2 = np.log(f2)
        pos = log_f2[~zero]
        for i, q in enumerate(qs):
            if q > 0:
                lf2 = log_f2
            else:
                lf2 = pos
                if zero.any():
                    n_zero += int(zero.sum())
            if lf2.size == 0:
                raise ValueError(f"every segment at scale {s} has zero fluctuation; H({q}) undefined")
            if q == 0:
                log_f[i, j] = 0.5 * lf2.mean()
            else:
                log_f[i, j] = (logsumexp(0.5 * q * lf2) - math.log(lf2.size)) / q
    if n_zero:
        warnings.warn(f"{n_zero} zero-variance segments excluded from q <= 0 moments", RuntimeWarning, stacklevel=2)
    if not np.all(np.isfinite(log_f)):
        raise ValueError("non-finite fluctuation function")
    slope, r2 = _fit(np.log(scales), log_f)
    return ScalingSpectrum("mfdfa", qs, slope, r2, scales, log_f, {"zero_segments": n_zero})


def moment_scaling(x, lags=None, qs=None) -> ScalingSpectrum:
    """Scaling exponents zeta_q of E|x_{t+tau} - x_t|^q over all overlapping pairs."""
    x = np.asarray(x, dtype=float)
    qs = q_grid(include_zero=False) if qs is None else np.asarray(qs, dtype=float)
    if np.any(qs == 0):
        raise ValueError("q = 0 is not defined for moment scaling")
    lags = default_moment_lags(x.size) if lags is None else np.asarray(lags, dtype=int)
    if lags.size < 2 or lags.min() < 1:
        raise ValueError("need at least two positive lags")
    if lags.max() > x.size / 4:
        raise ValueError(f"largest lag {lags.max()} exceeds a quarter of the series length {x.size}")

    log_m = np.empty((qs.size, lags.size))
    n_zero = 0
    for j, tau in enumerate(lags):
        inc = np.abs(x[tau:] - x[:-tau])
        with np.errstate(divide="ignore"):
            log_inc = np.log(inc)
        nz = log_inc[inc > 0]
        zeros = inc.size - nz.size
        for i, q in enumerate(qs):
            if q < 0:
                n_zero += zeros
                if nz.size == 0:
                    raise ValueError(f"all increments at lag {tau} are zero; negative moment q={q} undefined")
                log_m[i, j] = logsumexp(q * nz) - math.log(nz.size)
            else:
                log_m[i, j] = logsumexp(q * log_inc) - math.log(inc.size)
    if not np.all(np.isfinite(log_m)):
        raise ValueError("non-finite moments (constant series?)")
    slope, r2 = _fit(np.log(lags), log_m)
    return ScalingSpectrum("moments", qs, slope, r2, lags, log_m, {"zero_increments": n_zero})


def _filters(wavelet: str) -> tuple[np.ndarray, np.ndarray]:
    w = pywt.Wavelet(wavelet)
    return np.asarray(w.dec_lo), np.asarray(w.dec_hi)


def wavelet_coefficients(x, levels: int, wavelet: str = DEFAULT_WAVELET) -> list[np.ndarray]:
    """L1-normalised detail coefficients for j = 1..levels, boundary-affected values dropped.

    Only fully supported ('valid') convolutions are kept, so the coefficient
    ``k`` at level ``j`` depends on samples starting at ``2**j * k``.
    """
    lo, hi = _filters(wavelet)
    approx = np.asarray(x, dtype=float)
    out = []
    for j in range(1, levels + 1):
        if approx.size < lo.size:
            break
        d = np.convolve(approx, hi, mode="valid")[::2]
        approx = np.convolve(approx, lo, mode="valid")[::2]
        out.append(d * 2.0 ** (-j / 2))
    return out


def wavelet_leaders(coeffs: list[np.ndarray], filter_len: int = 6) -> list[np.ndarray]:
    """Leaders: sup of |d| over the dyadic cube, its two neighbours and all finer scales.

    With valid convolutions the children of (j, k) at level j-1 sit at
    ``2k + shift`` and ``2k + shift + 1`` where ``shift = filter_len // 2 - 1``.
    """
    shift = filter_len // 2 - 1
    leaders = []
    omega = None
    for d in coeffs:
        a = np.abs(d)
        if omega is not None:
            k = np.arange(a.size)
            ok = 2 * k + shift + 1 < omega.size
            a = a[ok]
            k = k[ok]
            a = np.maximum(a, np.maximum(omega[2 * k + shift], omega[2 * k + shift + 1]))
        omega = a
        if a.size < 3:
            leaders.append(np.empty(0))
            continue
        leaders.append(np.maximum(np.maximum(a[:-2], a[1:-1]), a[2:]))
    return leaders


def dwt_leaders(
    x,
    levels: int | None = None,
    qs=None,
    wavelet: str = DEFAULT_WAVELET,
    j_min: int = 3,
    min_leaders: int = 8,
) -> ScalingSpectrum:
    """Wavelet-leader scaling exponents zeta_q from log2 M_q(2^j) against j.

    The fit uses levels ``j_min..`` that still hold at least ``min_leaders``
    leaders (by default the two finest levels are skipped).
    """
    x = np.asarray(x, dtype=float)
    qs = q_grid() if qs is None else np.asarray(qs, dtype=float)
    if levels is None:
        levels = int(math.floor(math.log2(x.size))) - 2
    if x.size < 2 ** (levels + 2):
        raise ValueError(f"series of length {x.size} too short for {levels} levels")
    if np.ptp(x) == 0:
        raise ValueError("wavelet leaders are undefined for a constant series")
    coeffs = wavelet_coefficients(x, levels, wavelet)
    leaders = wavelet_leaders(coeffs, pywt.Wavelet(wavelet).dec_len)
    js = [j for j, l in enumerate(leaders, start=1) if j >= j_min and l.size >= min_leaders]
    if len(js) < 3:
        raise ValueError(f"only {len(js)} usable levels; need at least 3")
    log2_m = np.empty((qs.size, len(js)))
    n_zero = 0
    for c, j in enumerate(js):
        l = leaders[j - 1]
        with np.errstate(divide="ignore"):
            log_l = np.log(l)
        nz = log_l[l > 0]
        for i, q in enumerate(qs):
            if q < 0:
                n_zero += l.size - nz.size
                if nz.size == 0:
                    raise ValueError(f"all leaders at level {j} are zero")
                val = logsumexp(q * nz) - math.log(nz.size)
            elif q == 0:
                val = 0.0
            else:
                val = logsumexp(q * log_l) - math.log(l.size)
            log2_m[i, c] = val / math.log(2)
    if not np.all(np.isfinite(log2_m)):
        raise ValueError("non-finite leader moments")
    js_arr = np.asarray(js)
    slope, r2 = _fit(js_arr.astype(float), log2_m)
    return ScalingSpectrum("wavelet_leaders", qs, slope, r2, js_arr, log2_m, {"zero_leaders": n_zero})


def shuffle(x, seed) -> np.ndarray:
    """Uniform random permutation (numpy's Fisher-Yates), reproducible from ``seed``."""
    x = np.asarray(x)
    return np.random.default_rng(seed).permutation(x)


_RUNNERS = {"mfdfa": mfdfa, "moments": moment_scaling, "wavelet_leaders": dwt_leaders}


def run_method(method: str, x, **kwargs) -> ScalingSpectrum:
    try:
        fn = _RUNNERS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}") from None
    return fn(x, **kwargs)


def shuffle_comparison(x, method: str = "mfdfa", seed: int = 0, n_shuffles: int = 10, **kwargs) -> ShuffleComparison:
    """Spectrum of ``x`` against the per-q mean spectrum over ``n_shuffles`` permutations.

    Shuffle seeds are spawned from ``seed``. Method keyword arguments (grids,
    detrend order) are shared so both sides use identical settings; scale grids
    are fixed from the original series length.
    """
    x = np.asarray(x, dtype=float)
    if method == "mfdfa":
        kwargs.setdefault("scales", default_mfdfa_scales(x.size))
    elif method == "moments":
        kwargs.setdefault("lags", default_moment_lags(x.size))
    original = run_method(method, x, **kwargs)
    children = np.random.SeedSequence(seed).spawn(n_shuffles)
    spectra = [run_method(method, shuffle(x, np.random.default_rng(c)), **kwargs) for c in children]
    mean_exp = np.mean([s.exponents for s in spectra], axis=0)
    mean_r2 = np.mean([s.r_squared for s in spectra], axis=0)
    shuffled = ScalingSpectrum(method, original.qs, mean_exp, mean_r2, original.scales)
    w0 = original.summary.width
    ratio = shuffled.summary.width / w0 if w0 > 1e-8 else None
    return ShuffleComparison(original, shuffled, ratio, seed, n_shuffles)
