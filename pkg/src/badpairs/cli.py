"""Command-line orchestration: expansion, scanning, certification, and the
verification scan, with resumable long jobs.

Exit codes: 0 success (including empty results), 1 usage/input error,
2 internal invariant violation (a bug, never a math outcome).
Progress goes to stderr; stdout carries only data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import approx, cusick, patterns
from .cfrac import (
    THETA_ROOT,
    QuotientFileError,
    expand_quotients,
    read_quotients,
)
from .cusick import ExactnessError
from .patterns import PatternHit, PatternKind

#: quotient count comfortably covering the n-th successive-record case
CASE_TERMS = {"A": 70, "B": 2940, "C": 3645, "D": 33890}
CASE_ORDINAL = {"A": 0, "B": 1, "C": 2, "D": 3}
DEFAULT_MIN_N = 20


class UsageError(Exception):
    pass


class _Progress:
    """Rate-limited progress reporting to stderr (10 s period)."""

    def __init__(self, label: str, interval: float = 10.0):
        self.label = label
        self.interval = interval
        self._last = time.monotonic()

    def __call__(self, n):
        now = time.monotonic()
        if now - self._last >= self.interval:
            self._last = now
            print(f"{self.label}: {n}", file=sys.stderr)


def _checkpoint_dir():
    return os.environ.get("BADPAIRS_CHECKPOINT_DIR")


def cmd_cf(args) -> int:
    expand_quotients(
        THETA_ROOT,
        args.terms,
        args.out,
        checkpoint_dir=_checkpoint_dir(),
        progress=_Progress("cf terms"),
    )
    return 0


def cmd_scan(args) -> int:
    hits = patterns.find_patterns(args.quotients, args.min_n)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        patterns.write_hits_jsonl(hits, out)
    finally:
        if args.out:
            out.close()
    return 0


def _hit_at(quotients, start_index: int) -> PatternHit:
    n = len(quotients)
    if 0 <= start_index and start_index + 3 < n:
        w = quotients[start_index : start_index + 4]
        if w[1] == 1 and w[2] == 1:
            return PatternHit(start_index, PatternKind.ONE_ONE, w[0], w[3])
    if 0 <= start_index and start_index + 2 < n:
        w = quotients[start_index : start_index + 3]
        if w[1] == 2:
            return PatternHit(start_index, PatternKind.TWO, w[0], w[2])
    raise UsageError(f"no pattern starts at index {start_index}")


def cmd_cstar(args) -> int:
    quotients = read_quotients(args.quotients)
    hit = _hit_at(quotients, args.hit)
    basis, cert, candidates = cusick.select_best_truncation(
        hit, quotients, digits=args.digits
    )
    print(cusick.certificate_to_json(hit, cert, candidates))
    return 0


def _read_decimal_file(path: str) -> str:
    with open(path) as fh:
        return fh.read().strip()


def cmd_verify(args) -> int:
    try:
        alpha = approx.FixedPointReal.from_decimal(_read_decimal_file(args.alpha_file))
        beta = approx.FixedPointReal.from_decimal(_read_decimal_file(args.beta_file))
    except ValueError as e:
        raise UsageError(str(e)) from None
    progress = _Progress("verify q")
    try:
        with open(args.out, "w", newline="") as fh:
            records = []
            for rec in approx.best_approx_scan(alpha, beta, args.qmax):
                records.append(rec)
                progress(rec.q)
            approx.write_records_csv(records, fh)
    except approx.ResolutionExceededError as e:
        raise UsageError(str(e)) from None
    return 0


def _record_cases(n_terms: int, min_n: int, quotients_path: str):
    quotients = expand_quotients(
        THETA_ROOT,
        n_terms,
        quotients_path,
        checkpoint_dir=_checkpoint_dir(),
        progress=_Progress("cf terms"),
    )
    hits = patterns.find_patterns(quotients, min_n)
    return quotients, hits, cusick.successive_records(hits, quotients)


def _default_quotients_path() -> str:
    base = _checkpoint_dir() or "."
    return os.path.join(base, "theta_cf.txt")


def cmd_figure_data(args) -> int:
    case = args.case
    quotients_path = args.quotients or _default_quotients_path()
    _, _, records = _record_cases(CASE_TERMS[case], 22, quotients_path)
    ordinal = CASE_ORDINAL[case]
    if ordinal >= len(records):
        raise UsageError(f"case {case} not found among {len(records)} record hits")
    hit, basis, _ = records[ordinal]
    digits = max(61, 2 * len(str(args.qmax)) + 12)
    alpha_s, beta_s = cusick.frac_parts(basis, digits)
    alpha = approx.FixedPointReal.from_decimal(alpha_s)
    beta = approx.FixedPointReal.from_decimal(beta_s)
    progress = _Progress(f"case {case} scan q")
    records_out = []
    for rec in approx.best_approx_scan(alpha, beta, args.qmax):
        records_out.append(rec)
        progress(rec.q)
    with open(args.out, "w", newline="") as fh:
        approx.write_records_csv(records_out, fh)
    return 0


def cmd_pipeline(args) -> int:
    os.makedirs(args.outdir, exist_ok=True)
    quotients_path = os.path.join(args.outdir, "theta_cf.txt")
    quotients, hits, records = _record_cases(args.terms, args.min_n, quotients_path)
    with open(os.path.join(args.outdir, "hits.jsonl"), "w") as fh:
        patterns.write_hits_jsonl(hits, fh)
    summary = []
    for label_i, (hit, basis, _) in enumerate(records):
        basis, cert, candidates = cusick.select_best_truncation(
            hit, quotients, digits=args.digits
        )
        obj = cusick.certificate_to_json_obj(hit, cert, candidates)
        label = chr(ord("A") + label_i) if label_i < 26 else str(label_i)
        obj["case"] = label
        cert_path = os.path.join(args.outdir, f"certificate_{label}.json")
        with open(cert_path, "w") as fh:
            json.dump(obj, fh, sort_keys=True, indent=2)
            fh.write("\n")
        if args.qmax > 0:
            digits = max(61, 2 * len(str(args.qmax)) + 12)
            alpha_s, beta_s = cusick.frac_parts(basis, digits)
            recs = list(
                approx.best_approx_scan(
                    approx.FixedPointReal.from_decimal(alpha_s),
                    approx.FixedPointReal.from_decimal(beta_s),
                    args.qmax,
                )
            )
            with open(
                os.path.join(args.outdir, f"bestapprox_{label}.csv"), "w", newline=""
            ) as fh:
                approx.write_records_csv(recs, fh)
        summary.append(
            {
                "case": label,
                "positions": hit.positions,
                "pattern": hit.to_json_obj(),
                "cstar": cert.cstar_decimal,
                "achieving_term": obj["achieving_term"],
            }
        )
    print(json.dumps(summary, sort_keys=True, indent=2))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    p = _Parser(prog="badpairs", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    cf = sub.add_parser("cf", help="expand partial quotients of theta to a file")
    cf.add_argument("--terms", type=int, required=True)
    cf.add_argument("--out", required=True)
    cf.set_defaults(func=cmd_cf)

    sc = sub.add_parser("scan", help="scan a quotient file for patterns")
    sc.add_argument("--quotients", required=True)
    sc.add_argument("--min-n", type=int, default=DEFAULT_MIN_N)
    sc.add_argument("--out")
    sc.set_defaults(func=cmd_scan)

    cs = sub.add_parser("cstar", help="certify c* for the pattern at a start index")
    cs.add_argument("--quotients", required=True)
    cs.add_argument("--hit", type=int, required=True, help="0-based start index")
    cs.add_argument("--digits", type=int, default=61)
    cs.set_defaults(func=cmd_cstar)

    vf = sub.add_parser("verify", help="best-approximant scan of a decimal pair")
    vf.add_argument("--alpha-file", required=True)
    vf.add_argument("--beta-file", required=True)
    vf.add_argument("--qmax", type=int, required=True)
    vf.add_argument("--out", required=True)
    vf.set_defaults(func=cmd_verify)

    fd = sub.add_parser("figure-data", help="best-approximant CSV for a named case")
    fd.add_argument("--case", choices=sorted(CASE_TERMS), required=True)
    fd.add_argument("--qmax", type=int, required=True)
    fd.add_argument("--out", required=True)
    fd.add_argument("--quotients", help="quotient file to reuse/extend")
    fd.set_defaults(func=cmd_figure_data)

    pl = sub.add_parser("pipeline", help="full pipeline: cf, scan, certify, verify")
    pl.add_argument("--terms", type=int, required=True)
    pl.add_argument("--min-n", type=int, default=DEFAULT_MIN_N)
    pl.add_argument("--digits", type=int, default=61)
    pl.add_argument("--qmax", type=int, default=0, help="0 skips the scans")
    pl.add_argument("--outdir", required=True)
    pl.set_defaults(func=cmd_pipeline)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for name in ("terms", "digits", "qmax", "min_n"):
            v = getattr(args, name, None)
            if v is not None and name != "qmax" and v < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (QuotientFileError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ExactnessError as e:
        print(f"internal invariant violation: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
