"""H-vs-K sweep on fractional Gaussian noise against the Gaussian-moment prediction.

For Gaussian block sums S ~ N(0, s^2) the statistic (1/K) sum |S_j|^p crosses 1
where p log s + log E|Z|^p = 0, so the estimated h(k) follows the block scale
n^H s_0 rather than settling at a constant.

    python3 scripts/hvsk_sweep.py --hurst 0.1 --log2n 20 --seeds 4
"""

import argparse
import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln

from roughvol import synth
from roughvol.pvar import PGrid, h_vs_k_diagnostic


def gaussian_crossing_h(sigma):
    """1/p* for p log(sigma) + log E|Z|^p = 0, or None when there is no root on (0.05, 40)."""
    lam = lambda p: 0.5 * p * math.log(2) + gammaln((p + 1) / 2) - 0.5 * math.log(math.pi)
    f = lambda p: p * math.log(sigma) + lam(p)
    if f(0.05) * f(40.0) > 0:
        return None
    return 1.0 / brentq(f, 0.05, 40.0)


def fmt(v):
    return "   none" if v is None or not np.isfinite(v) else f"{v:7.3f}"


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--hurst", type=float, default=0.1)
    ap.add_argument("--log2n", type=int, default=20)
    ap.add_argument("--scale", type=float, help="per-step standard deviation (default 1000^-H)")
    ap.add_argument("--seeds", type=int, default=4)
    ap.add_argument("--kmin", type=int, default=500)
    ap.add_argument("--kmax", type=int, default=1500)
    ap.add_argument("--kstep", type=int, default=100)
    args = ap.parse_args()

    n = 2**args.log2n
    scale = args.scale if args.scale is not None else 1000.0**-args.hurst
    ks = np.arange(args.kmin, args.kmax + 1, args.kstep)
    grid = PGrid.make("standard")
    runs = []
    for s in range(args.seeds):
        x = scale * synth.generate(synth.SynthSpec("fgn", n, {"H": args.hurst}, seed=100 + s))
        runs.append([np.nan if p.h is None else p.h for p in h_vs_k_diagnostic(x, ks, grid)])
    runs = np.array(runs)
    print(f"fGn H={args.hurst}, N=2^{args.log2n}, step sd {scale:g}, {args.seeds} seeds")
    print("     k      n   h_mean   h_sd  predicted")
    for i, k in enumerate(ks):
        sigma = (n // k) ** args.hurst * scale
        col = runs[:, i][np.isfinite(runs[:, i])]
        mean, sd = (col.mean(), col.std()) if col.size else (None, None)
        print(f"{k:6d} {n // k:6d}  {fmt(mean)} {fmt(sd)}    {fmt(gaussian_crossing_h(sigma))}")


if __name__ == "__main__":
    main()
