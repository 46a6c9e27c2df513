#!/usr/bin/env python3
"""Emit average-throughput-vs-velocity sweeps for both BS intensities.

One CSV per (intensity, HO delay) pair, schemes best / skip+ic /
skip-comp+ic, velocities 0..200 km/h.
"""

import argparse
import os
import sys

from skipcomp.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default="out/throughput")
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)

    for lam in (50.0, 70.0):
        for delay in (0.7, 2.0):
            out = os.path.join(
                args.outdir, f"throughput_lambda{lam:.0f}_d{delay}.csv"
            )
            code = cli_main([
                "throughput", "--lambda", str(lam), "--delay", str(delay),
                "--vmin", "0", "--vmax", "200", "--vstep", "5",
                "--out", out,
            ])
            if code != 0:
                return code
            print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
