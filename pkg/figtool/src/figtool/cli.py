"""figtool INPUT.csv OUTPUT.svg --title TEXT --hline VALUE:LABEL ..."""

from __future__ import annotations

import argparse
import sys

from .plot import InputError, PlotSpec, RefLine, render


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="figtool", description=__doc__)
    p.add_argument("input_csv", help="records CSV with header q,p1,p2,eps,c")
    p.add_argument("output_image", help="output image path (e.g. plot.svg)")
    p.add_argument("--title", default="")
    p.add_argument(
        "--hline",
        action="append",
        default=[],
        metavar="VALUE:LABEL",
        help="horizontal reference line; VALUE may be a fraction like 2/7",
    )
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        hlines = tuple(RefLine.parse(s) for s in args.hline)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    spec = PlotSpec(
        input_csv=args.input_csv,
        output_image=args.output_image,
        title=args.title,
        hlines=hlines,
    )
    try:
        result = render(spec)
    except (InputError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(f"{result.output_image}: {result.n_points} points")
    return 0


if __name__ == "__main__":
    sys.exit(main())
