#!/usr/bin/env python3
"""Scan the probe frequency across the two-photon resonance for a
dissipative preset and record steady-state observables for both drive
variants (transparency-window scan)."""

import argparse

from lamsim.cli import RunConfig, cmd_sweep
from lamsim.model import PRESET_NAMES


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", default="A-II",
                    choices=[n for n in PRESET_NAMES if n.endswith("II")])
    ap.add_argument("--range", default="5.0:7.0:0.1", metavar="a:b:step",
                    help="probe-frequency range (default 5.0:7.0:0.1)")
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    out = args.out or f"{args.case}_probe_scan.csv"
    cfg = RunConfig(case=args.case, omega_p_range=args.range,
                    observables="populations,coherences,rwa_error",
                    drive="both", workers=args.workers, out=out)
    cmd_sweep(cfg)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
