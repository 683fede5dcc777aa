#!/usr/bin/env python3
"""Reproduce the four record cases end to end.

Expands 34,000 partial quotients, scans for patterns, certifies c* with
61-digit fractional parts for every successive-record hit, runs the
best-approximant verification scan, and writes everything under --outdir
(default ./reproduction).  Roughly two minutes from a cold start; the
quotient file is resumable, so reruns are fast.
"""

import argparse
import sys

from badpairs.cli import main as badpairs_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="reproduction")
    ap.add_argument("--terms", type=int, default=34_000)
    ap.add_argument("--qmax", type=int, default=10**6)
    args = ap.parse_args()
    return badpairs_main([
        "pipeline",
        "--terms", str(args.terms),
        "--min-n", "20",
        "--digits", "61",
        "--qmax", str(args.qmax),
        "--outdir", args.outdir,
    ])


if __name__ == "__main__":
    sys.exit(main())
