"""Scaling spectra of the synthetic oracles under all three diagnostics.

Prints H(q) (MF-DFA, on the increments) and zeta_q / q (moments and leaders, on
the cumulative path) next to the known law for each process.

    python3 scripts/synthetic_spectra.py [--log2n 16]
"""

import argparse

import numpy as np

from roughvol import multifractal as mf
from roughvol import synth
from roughvol.selftest import canonical_cascade

QS = np.array([-4.0, -2.0, -1.0, 1.0, 2.0, 4.0])


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--log2n", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    n = 2**args.log2n

    cases = {
        "gaussian_iid": (synth.generate(synth.SynthSpec("gaussian_iid", n, seed=args.seed)), lambda q: 0.5),
        "fgn H=0.3": (synth.generate(synth.SynthSpec("fgn", n, {"H": 0.3}, seed=args.seed)), lambda q: 0.3),
        "fgn H=0.7": (synth.generate(synth.SynthSpec("fgn", n, {"H": 0.7}, seed=args.seed)), lambda q: 0.7),
        "cascade a=0.75": (canonical_cascade(levels=args.log2n), lambda q: synth.cascade_h_q(0.75, q)),
    }
    qpos = QS[QS > 0]
    for name, (x, law) in cases.items():
        path = np.cumsum(x - x.mean())
        dfa = mf.mfdfa(x, qs=QS)
        mom = mf.moment_scaling(path, qs=qpos)
        lead = mf.dwt_leaders(path, qs=QS)
        print(f"\n{name}  (width: mfdfa {dfa.summary.width:.3f}, leaders {lead.summary.width:.3f})")
        print("     q     law   mfdfa  moments  leaders")
        for q in QS:
            m = mom.exponents[qpos == q][0] / q if q > 0 else float("nan")
            l = lead.exponents[QS == q][0] / q
            d = dfa.exponents[QS == q][0]
            print(f"  {q:4.0f}  {law(q):6.3f}  {d:6.3f}  {m:7.3f}  {l:7.3f}")


if __name__ == "__main__":
    main()
