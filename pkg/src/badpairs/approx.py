"""Sup-norm simultaneous approximation: the measure q*max(|q*a1-p1|^2,
|q*a2-p2|^2), exhaustive best-approximant enumeration by the running-
minimum rule, and the CSV data behind the transient plots.

Inputs are decimal fixed-point reals (the certified decimal strings
produced by the c* pipeline); all comparisons inside the scan are exact
integer comparisons at the common scale.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator

CSV_HEADER = ["q", "p1", "p2", "eps", "c"]


class ResolutionExceededError(Exception):
    """The fixed-point scale cannot resolve ||q*alpha|| at this q."""


@dataclass(frozen=True)
class FixedPointReal:
    """value = mantissa / 10^scale, true real within 10^-scale."""

    mantissa: int
    scale: int

    @staticmethod
    def from_decimal(s: str) -> "FixedPointReal":
        s = s.strip()
        sign = -1 if s.startswith("-") else 1
        if s[0] in "+-":
            s = s[1:]
        if "." in s:
            intpart, fracpart = s.split(".", 1)
        else:
            intpart, fracpart = s, ""
        if not (intpart + fracpart).isdigit():
            raise ValueError(f"not a decimal literal: {s!r}")
        mantissa = sign * int((intpart or "0") + fracpart)
        return FixedPointReal(mantissa, len(fracpart))

    def value(self) -> Fraction:
        return Fraction(self.mantissa, 10**self.scale)

    def rescaled(self, scale: int) -> "FixedPointReal":
        """Zero-pad to a larger scale (exact)."""
        if scale < self.scale:
            raise ValueError("cannot reduce scale")
        return FixedPointReal(self.mantissa * 10 ** (scale - self.scale), scale)


@dataclass(frozen=True)
class BestApproxRecord:
    q: int
    p1: int
    p2: int
    eps: Fraction
    c: Fraction


def _require_resolution(scale: int, q_max: int):
    # scale must leave >= 10 digits of headroom below 1/q_max^2
    if 10**scale < q_max * q_max * 10**10:
        raise ResolutionExceededError(
            f"scale {scale} cannot resolve denominators up to {q_max} "
            f"(needs scale >= 2*log10(q_max) + 10)"
        )


def _nearest(n: int, scale_pow: int) -> tuple[int, int]:
    """Nearest integer p to n/scale_pow and the scaled distance |n - p*S|."""
    p = (2 * n + scale_pow) // (2 * scale_pow)
    return p, abs(n - p * scale_pow)


def c_measure_1d(alpha: FixedPointReal, q: int) -> Fraction:
    """q * ||q*alpha|| with p the nearest integer."""
    if q < 1:
        raise ValueError("q must be positive")
    _require_resolution(alpha.scale, q)
    S = 10**alpha.scale
    _, dist = _nearest(q * alpha.mantissa, S)
    return Fraction(q * dist, S)


def c_measure_2d(
    alpha: FixedPointReal, beta: FixedPointReal, q: int
) -> tuple[int, int, Fraction, Fraction]:
    """(p1, p2, eps, c) with eps = max component error, c = q*eps^2."""
    if q < 1:
        raise ValueError("q must be positive")
    scale = max(alpha.scale, beta.scale)
    _require_resolution(scale, q)
    a, b = alpha.rescaled(scale), beta.rescaled(scale)
    S = 10**scale
    p1, d1 = _nearest(q * a.mantissa, S)
    p2, d2 = _nearest(q * b.mantissa, S)
    dist = max(d1, d2)
    return p1, p2, Fraction(dist, S), Fraction(q * dist * dist, S * S)


def best_approx_scan(
    alpha: FixedPointReal, beta: FixedPointReal, q_max: int
) -> Iterator[BestApproxRecord]:
    """Running-minimum scan over q = 1..q_max: a record is emitted whenever
    the max component error strictly beats every smaller denominator."""
    if q_max < 1:
        raise ValueError("q_max must be positive")
    scale = max(alpha.scale, beta.scale)
    _require_resolution(scale, q_max)
    a, b = alpha.rescaled(scale), beta.rescaled(scale)
    S = 10**scale
    S2 = S * S
    m1, m2 = a.mantissa, b.mantissa
    n1 = n2 = 0
    best: int | None = None
    for q in range(1, q_max + 1):
        n1 += m1
        n2 += m2
        p1 = (2 * n1 + S) // (2 * S)
        d1 = abs(n1 - p1 * S)
        p2 = (2 * n2 + S) // (2 * S)
        d2 = abs(n2 - p2 * S)
        dist = d1 if d1 >= d2 else d2
        if best is None or dist < best:
            best = dist
            yield BestApproxRecord(
                q, p1, p2, Fraction(dist, S), Fraction(q * dist * dist, S2)
            )


@dataclass(frozen=True)
class TransientSummary:
    transient_end_q: int  # largest q with all records at or below it above threshold
    min_c: Fraction
    argmin_q: int


def transient_report(records: Iterable[BestApproxRecord], threshold) -> TransientSummary:
    records = list(records)
    if not records:
        raise ValueError("no records")
    threshold = Fraction(threshold)
    end_q = 0
    ok = True
    min_c = None
    argmin = None
    for rec in records:
        if ok and rec.c > threshold:
            end_q = rec.q
        elif ok:
            ok = False
        if min_c is None or rec.c < min_c:
            min_c = rec.c
            argmin = rec.q
    return TransientSummary(end_q, min_c, argmin)


# -- CSV -------------------------------------------------------------------


def _fmt12(x: Fraction) -> str:
    return f"{float(x):.12g}"


def write_records_csv(records: Iterable[BestApproxRecord], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([r.q, r.p1, r.p2, _fmt12(r.eps), _fmt12(r.c)])


def read_records_csv(fh) -> list[dict]:
    rd = csv.DictReader(fh)
    if rd.fieldnames != CSV_HEADER:
        raise ValueError(f"bad CSV header: {rd.fieldnames}")
    return [
        {
            "q": int(row["q"]),
            "p1": int(row["p1"]),
            "p2": int(row["p2"]),
            "eps": float(row["eps"]),
            "c": float(row["c"]),
        }
        for row in rd
    ]


def golden_ratio_fixed(scale: int) -> FixedPointReal:
    """(sqrt(5)-1)/2 truncated to `scale` decimal digits."""
    m = (isqrt(5 * 10 ** (2 * scale)) - 10**scale) // 2
    return FixedPointReal(m, scale)


def fibonacci_denominators(lo: int, hi: int) -> list[int]:
    out = []
    a, b = 1, 1
    while b <= hi:
        if b >= lo:
            out.append(b)
        a, b = b, a + b
    return out
