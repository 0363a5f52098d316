"""Command-line entry point (``roughvol`` or ``python3 -m roughvol``)."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import load_config
from .pipeline import STAGES, run_pipeline
from .report import write_atomic
from .selftest import run_self_test
from .synth import KINDS, SynthSpec, generate

_STAGE_COMMANDS = {"ingest-audit": (), "pvar": ("pvar",), "stationarity": ("stationarity",), "mfa": ("mfa",),
                   "all": STAGES}


def int_list(text: str) -> tuple[int, ...]:
    """``"2017,2019-2021"`` -> (2017, 2019, 2020, 2021)."""
    out = []
    for part in text.replace(" ", ",").split(","):
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"no integers in {text!r}")
    return tuple(out)


def _pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value settings file (flags take precedence)")
    p.add_argument("--input", help="minute OHLCV CSV, or a single-column CSV of returns")
    p.add_argument("--out", help="output directory (default: out)")
    p.add_argument("--years", type=int_list, help="e.g. 2017-2024 or 2018,2021")
    p.add_argument("--freqs", type=int_list, help="bar sizes in minutes, e.g. 1,5,10,15")
    p.add_argument("--grid", choices=("standard", "wide"), help="p-grid for the zero crossing and H-vs-K")
    p.add_argument("--series", choices=("ret", "rv", "both"))
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--force-incomplete", action="store_const", const=True, default=None,
                   help="analyse windows below the 90%% completeness threshold")
    p.add_argument("--k-step", type=int, help="block-count step for the H-vs-K sweep")
    p.add_argument("--detrend-order", type=int, choices=(1, 2, 3))
    p.add_argument("--shuffles", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="roughvol", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "ingest-audit": "window selection, completeness and gap tables",
        "pvar": "log W curves, zero crossings and the H-vs-K sweep",
        "stationarity": "ADF, rolling stability and binary segmentation",
        "mfa": "MF-DFA, moment scaling and wavelet leaders with shuffle controls",
        "all": "every stage",
    }
    for name, text in helps.items():
        _pipeline_flags(sub.add_parser(name, help=text))

    sp = sub.add_parser("synth", help="write a synthetic series as a single-column CSV")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--n", type=int, default=2**16)
    sp.add_argument("--hurst", type=float, help="H for fgn/fbm")
    sp.add_argument("--weight", type=float, default=0.75, help="cascade weight a")
    sp.add_argument("--no-swaps", action="store_true", help="deterministic cascade placement")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", required=True, help="CSV path")

    st = sub.add_parser("self-test", help="synthetic-oracle acceptance checks")
    st.add_argument("--only", type=int_list, help="check ids to run")
    return ap


def _overrides(args) -> dict:
    keys = ("input", "out", "years", "freqs", "grid", "series", "seed", "jobs", "force_incomplete", "k_step",
            "detrend_order", "shuffles")
    return {k: getattr(args, k) for k in keys}


def _synth(args) -> int:
    params = {}
    if args.kind in ("fgn", "fbm"):
        if args.hurst is None:
            raise SystemExit(f"--hurst is required for {args.kind}")
        params["H"] = args.hurst
    if args.kind == "binomial_cascade":
        params.update(a=args.weight, swaps=not args.no_swaps)
    x = generate(SynthSpec(args.kind, args.n, params, args.seed))
    body = "value\n" + "".join(f"{v!r}\n" for v in np.asarray(x, dtype=float).tolist())
    write_atomic(Path(args.output), body)
    print(f"wrote {x.size} values to {args.output}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "synth":
        return _synth(args)
    if args.command == "self-test":
        results = run_self_test(ids=args.only)
        return 0 if all(r.passed for r in results) else 1

    try:
        cfg = load_config(args.config, _overrides(args))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.input is None:
        print("error: --input is required", file=sys.stderr)
        return 2
    try:
        res = run_pipeline(cfg, _STAGE_COMMANDS[args.command])
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for e in res.excluded:
        print(f"excluded {e['year']} {e['frequency_min']}-min: {e['reason']}")
    for e in res.manifest.errors:
        print(f"error: {e}", file=sys.stderr)
    print(f"{len(res.manifest.files)} files written to {cfg.out}")
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
