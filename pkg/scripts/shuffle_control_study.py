"""Shuffle-control width ratios on the binomial cascade.

Reproduces the numbers behind the shuffle-control check: width ratio of each
diagnostic on the canonical cascade, the MF-DFA ratio as the series grows, and
its dependence on the cascade weight.

    python3 scripts/shuffle_control_study.py [--quick]
"""

import argparse
import time

import numpy as np

from roughvol import multifractal as mf
from roughvol.selftest import canonical_cascade


def ratio(x, method, n_shuffles, seed=0):
    c = mf.shuffle_comparison(x, method, seed=seed, n_shuffles=n_shuffles)
    return c.original.summary.width, c.shuffled.summary.width, c.width_ratio


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--quick", action="store_true", help="skip the 2^18 and 2^20 lengths")
    args = ap.parse_args()

    print("method            orig_width  shuf_width  ratio   (a=0.75, 2^16, 10 shuffles, seed 0)")
    x = canonical_cascade()
    for method in mf.METHODS:
        w0, w1, r = ratio(x, method, 10)
        print(f"{method:16s}  {w0:10.4f}  {w1:10.4f}  {r:6.3f}")

    print("\nMF-DFA ratio by length (a=0.75, 3 shuffles)")
    levels = (14, 16) if args.quick else (14, 16, 18, 20)
    for lv in levels:
        t = time.perf_counter()
        w0, w1, r = ratio(canonical_cascade(levels=lv), "mfdfa", 3)
        print(f"  2^{lv}: ratio {r:.3f}  (orig {w0:.3f}, shuffled {w1:.3f}, {time.perf_counter() - t:.1f} s)")

    print("\nMF-DFA ratio by weight (2^16, 10 shuffles)")
    for a in (0.6, 0.65, 0.7, 0.75, 0.8):
        w0, w1, r = ratio(canonical_cascade(a=a), "mfdfa", 10)
        spread = np.log10(a / (1 - a)) * 16
        print(f"  a={a:.2f}: ratio {r:.3f}  (orig {w0:.3f}, shuffled {w1:.3f}, mass range 1e{spread:.1f})")


if __name__ == "__main__":
    main()
