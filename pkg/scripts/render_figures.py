#!/usr/bin/env python3
"""Render transient plots for cases A and D.

Generates the best-approximant CSVs through the badpairs CLI and renders
them with figtool (install both packages first).  Writes caseA.svg and
caseD.svg under --outdir.
"""

import argparse
import os
import subprocess
import sys

CSTAR = {"A": "0.2851877", "D": "0.2856261"}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="figures")
    ap.add_argument("--qmax", type=int, default=10**6)
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    quotients = os.path.join(args.outdir, "theta_cf.txt")
    for case in ("A", "D"):
        csv_path = os.path.join(args.outdir, f"case{case}.csv")
        svg_path = os.path.join(args.outdir, f"case{case}.svg")
        subprocess.run(
            [sys.executable, "-m", "badpairs", "figure-data",
             "--case", case, "--qmax", str(args.qmax),
             "--out", csv_path, "--quotients", quotients],
            check=True,
        )
        subprocess.run(
            ["figtool", csv_path, svg_path,
             "--title", f"case {case}: c at best approximants",
             "--hline", "2/7:2/7", "--hline", f"{CSTAR[case]}:c*"],
            check=True,
        )
        print(svg_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
