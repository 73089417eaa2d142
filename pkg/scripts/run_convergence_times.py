#!/usr/bin/env python3
"""Detect the time to reach the periodic steady state for the dissipative
presets, full and co-rotating drives, at a configurable threshold."""

import argparse

from lamsim.model import ground_state, liouville_generator, preset
from lamsim import periodic
from lamsim.periodic import commensurate_period, convergence_time, one_period


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, default=1e-6,
                    help="period-averaged Frobenius threshold")
    args = ap.parse_args()
    print(f"{'case':>6} {'drive':>5} {'periods':>8} {'time':>12}")
    for case in ("A-II", "B-II", "C-II"):
        p = preset(case)
        period, steps = commensurate_period(p.omega_p, p.omega_c)
        for drive in ("full", "rwa"):
            g = liouville_generator(p, rwa=(drive == "rwa"))
            plan = periodic.make_plan(g, period, steps)
            pre = one_period(g, plan)
            t = convergence_time(g, plan, ground_state(), eps=args.eps,
                                 precomputed=pre)
            print(f"{case:>6} {drive:>5} {round(t / period):>8d} {t:12.4f}")


if __name__ == "__main__":
    main()
