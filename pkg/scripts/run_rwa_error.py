#!/usr/bin/env python3
"""Early-time error of the co-rotating drive against the exact drive for
all six presets: writes one CSV of error curves and prints the maxima."""

import argparse

import numpy as np

from lamsim.model import PRESET_NAMES, preset
from lamsim.sweep import rwa_error_curve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--horizon", type=float, default=10.0)
    ap.add_argument("--out", default="rwa_error_curves.csv")
    args = ap.parse_args()
    curves = {}
    for case in PRESET_NAMES:
        times, errs = rwa_error_curve(preset(case), args.horizon)
        curves[case] = errs
        print(f"{case}: max error {errs.max():.6f}")
    header = "t," + ",".join(PRESET_NAMES)
    data = np.column_stack([times] + [curves[c] for c in PRESET_NAMES])
    np.savetxt(args.out, data, delimiter=",", header=header, comments="")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
