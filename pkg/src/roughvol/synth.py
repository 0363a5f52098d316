"""Synthetic processes with known scaling laws.

These are the oracles every estimator in the package is checked against:
iid Gaussian noise and random walks (H = 1/2), fractional Gaussian noise and
its cumulative sum (monofractal, exponent H), and the binomial multiplicative
cascade (multifractal with a closed-form generalised Hurst exponent).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

KINDS = ("gaussian_iid", "random_walk", "fgn", "fbm", "binomial_cascade")

# covariance factorisation is O(n^3); beyond this the fallback is refused
_CHOLESKY_MAX_N = 4096


@dataclass(frozen=True)
class SynthSpec:
    kind: str
    n: int = 2**16
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown synthetic kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in ("fgn", "fbm"):
            H = self.params.get("H")
            if H is None or not 0.0 < H < 1.0:
                raise ValueError(f"{self.kind} requires H in (0, 1), got {H!r}")
        if self.kind == "binomial_cascade":
            a = self.params.get("a", 0.75)
            levels = self.params.get("levels")
            if not 0.5 < a < 1.0:
                raise ValueError(f"cascade weight a must lie in (0.5, 1), got {a}")
            if levels is not None and self.n != 2**levels:
                raise ValueError(f"cascade length must be 2**levels ({2**levels}), got n={self.n}")
            if levels is None and (self.n < 2 or self.n & (self.n - 1)):
                raise ValueError(f"cascade length must be a power of two, got n={self.n}")
        elif self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")

    @property
    def levels(self) -> int:
        return int(self.params.get("levels", round(math.log2(self.n))))


def fgn_autocovariance(k, H: float) -> np.ndarray:
    """Autocovariance of unit-variance fractional Gaussian noise at integer lags ``k``."""
    k = np.abs(np.asarray(k, dtype=float))
    h2 = 2.0 * H
    return 0.5 * (np.abs(k + 1) ** h2 - 2.0 * k**h2 + np.abs(k - 1) ** h2)


def fgn_circulant(n: int, H: float, rng: np.random.Generator) -> np.ndarray:
    """Davies-Harte circulant embedding. Raises if the embedding is not PSD."""
    gamma = fgn_autocovariance(np.arange(n + 1), H)
    row = np.concatenate([gamma, gamma[-2:0:-1]])  # length 2n
    eig = np.fft.fft(row).real
    if eig.min() < -1e-10 * eig.max():
        raise np.linalg.LinAlgError(
            f"circulant embedding has negative eigenvalue {eig.min():.3e} (n={n}, H={H})"
        )
    eig = np.clip(eig, 0.0, None)
    m = row.size
    z = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    w = np.fft.fft(np.sqrt(eig / m) * z)
    return w.real[:n].copy()


def fgn_cholesky(n: int, H: float, rng: np.random.Generator) -> np.ndarray:
    """Exact fGn through the Cholesky factor of the Toeplitz covariance."""
    cov = linalg.toeplitz(fgn_autocovariance(np.arange(n), H))
    chol = linalg.cholesky(cov, lower=True)
    return chol @ rng.standard_normal(n)


def fgn(n: int, H: float, rng: np.random.Generator) -> np.ndarray:
    try:
        return fgn_circulant(n, H, rng)
    except np.linalg.LinAlgError:
        if n > _CHOLESKY_MAX_N:
            raise
        return fgn_cholesky(n, H, rng)


def binomial_cascade(
    levels: int, a: float, rng: np.random.Generator | None = None, mass: float = 1.0, swaps: bool = True
) -> np.ndarray:
    """Dyadic multiplicative cascade with weights (a, 1-a).

    At every refinement each cell hands fraction ``a`` of its mass to one child
    and ``1-a`` to the other; the only randomness is which child gets ``a``.
    The multiset of final masses is therefore the same as the deterministic
    cascade, so its scaling law holds exactly. ``swaps=False`` (or no ``rng``)
    always gives ``a`` to the left child.
    """
    mu = np.array([mass], dtype=float)
    randomise = swaps and rng is not None
    for _ in range(levels):
        swap = rng.random(mu.size) < 0.5 if randomise else np.zeros(mu.size, dtype=bool)
        left = np.where(swap, 1.0 - a, a)
        out = np.empty(2 * mu.size)
        out[0::2] = mu * left
        out[1::2] = mu * (1.0 - left)
        mu = out
    return mu


def cascade_h_q(a: float, q: float) -> float:
    """Generalised Hurst exponent of the binomial cascade, 1/q - log2(a^q + (1-a)^q)/q."""
    if q == 0:
        raise ValueError("the cascade law is singular at q = 0")
    if not 0.5 <= a < 1.0:
        raise ValueError(f"a must lie in [0.5, 1), got {a}")
    return 1.0 / q - math.log2(a**q + (1.0 - a) ** q) / q


def generate(spec: SynthSpec) -> np.ndarray:
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "gaussian_iid":
        return rng.standard_normal(spec.n)
    if spec.kind == "random_walk":
        return np.cumsum(rng.standard_normal(spec.n))
    if spec.kind == "fgn":
        return fgn(spec.n, spec.params["H"], rng)
    if spec.kind == "fbm":
        return np.cumsum(fgn(spec.n, spec.params["H"], rng))
    return binomial_cascade(
        spec.levels,
        spec.params.get("a", 0.75),
        rng,
        spec.params.get("mass", 1.0),
        swaps=spec.params.get("swaps", True),
    )
