#!/usr/bin/env python3
"""Propagate one preset over a few drive periods and write the populations
and rotating-frame coherences to CSV (both drive variants)."""

import argparse

from lamsim.cli import RunConfig, cmd_propagate
from lamsim.model import PRESET_NAMES


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", default="A-II", choices=PRESET_NAMES)
    ap.add_argument("--periods", type=int, default=4)
    ap.add_argument("--order", type=int, default=6, choices=(4, 6))
    ap.add_argument("--out", default=None,
                    help="output CSV (default <case>_timeseries.csv)")
    args = ap.parse_args()
    out = args.out or f"{args.case}_timeseries.csv"
    cfg = RunConfig(case=args.case, periods=args.periods, order=args.order,
                    drive="both", frame="rwf", out=out)
    cmd_propagate(cfg)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
