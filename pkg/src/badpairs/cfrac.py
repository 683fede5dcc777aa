"""Continued fraction expansion of a real cubic irrational by two
independent methods, plus the convergent recurrence and quotient-file IO.

Primary method (CFStream): adaptive-precision certified intervals.  The
stream maintains the residuals d_k = Q_k*theta - P_k as dyadic intervals;
the next tail is -d_{k-2}/d_{k-1} and its floor is the next quotient.
Whenever a floor decision is ambiguous at the current precision, the root
enclosure is doubled and the residuals are rebuilt exactly from (P, Q).

Cross-check method (ExactCFStream): the classical integer polynomial-shift
(Lagrange) expansion.  It keeps an integer cubic whose root in (1, inf) is
the current tail; quotients come from exact sign tests at integers, and the
polynomial is transformed by x -> a + 1/x.  Coefficient growth makes this
the slow path, used as an oracle.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .dyadic import Interval
from .roots import Cubic, CubicRootRefiner

CHECKPOINT_EVERY = 10_000
_MAX_PREC = 1 << 28


class TerminatedCFError(Exception):
    """The tail became exactly an integer: the input root is rational."""


class QuotientFileError(Exception):
    pass


@dataclass(frozen=True)
class CubicRoot:
    """An integer cubic with a single real root in (lo, hi)."""

    coefficients: tuple[int, int, int, int]  # (c3, c2, c1, c0)
    lo: Fraction
    hi: Fraction

    def cubic(self) -> Cubic:
        return Cubic(*self.coefficients)


THETA_ROOT = CubicRoot((1, 1, -2, -1), Fraction(1), Fraction(2))


@dataclass(frozen=True)
class Convergent:
    index: int
    P: int
    Q: int


def convergents(quotients: Iterable[int]) -> Iterator[Convergent]:
    """P_k = a_k P_{k-1} + P_{k-2}, Q_k likewise, seeded (1,0) and (0,1)."""
    p_prev, q_prev = 1, 0  # k = -1
    p_prev2, q_prev2 = 0, 1  # k = -2
    for k, a in enumerate(quotients):
        if k > 0 and a < 1:
            raise ValueError(f"partial quotient a_{k}={a} < 1")
        p = a * p_prev + p_prev2
        q = a * q_prev + q_prev2
        yield Convergent(k, p, q)
        p_prev2, q_prev2 = p_prev, q_prev
        p_prev, q_prev = p, q


def convergents_at(quotients: Iterable[int], indices: set[int]) -> dict[int, Convergent]:
    """Single-pass lookup of selected convergents."""
    want = set(indices)
    out: dict[int, Convergent] = {}
    for c in convergents(quotients):
        if c.index in want:
            out[c.index] = c
            want.discard(c.index)
            if not want:
                break
    if want:
        raise ValueError(f"quotient sequence too short for indices {sorted(want)}")
    return out


class CFStream:
    """Certified adaptive-interval expansion of a cubic root."""

    def __init__(self, root: CubicRoot, initial_prec: int = 256):
        self.root = root
        self._refiner = CubicRootRefiner(root.cubic(), root.lo, root.hi)
        self.prec = initial_prec
        self.emitted_count = 0
        # convergents (P_{k-2}, Q_{k-2}) and (P_{k-1}, Q_{k-1})
        self._pq2 = (0, 1)
        self._pq1 = (1, 0)
        self._rebuild_residuals()

    def _rebuild_residuals(self):
        theta = self._refiner.enclosure(self.prec)
        self._d2 = self._residual(theta, self._pq2)
        self._d1 = self._residual(theta, self._pq1)

    @staticmethod
    def _residual(theta: Interval, pq: tuple[int, int]) -> Interval:
        p, q = pq
        return theta.mul_int(q).sub(Interval.from_int(p))

    def _refine(self):
        q_bits = max(self._pq1[1].bit_length(), 1)
        target = max(2 * self.prec, 2 * q_bits + 256)
        if target > _MAX_PREC:
            raise TerminatedCFError(
                "floor decision did not stabilize at extreme precision; "
                "the input root is likely rational"
            )
        self.prec = target
        self._rebuild_residuals()

    def next_quotient(self) -> int:
        k = self.emitted_count
        guard = 64
        while True:
            if self._d1.contains_zero():
                self._refine()
                continue
            t = self._d2.neg().round(guard).div(self._d1.round(guard), guard)
            a = t.floor_unique()
            if a is None:
                if guard < self.prec:
                    guard *= 4
                    continue
                self._refine()
                guard = 64
                continue
            if k > 0 and a < 1:
                raise TerminatedCFError(f"non-positive quotient a_{k}={a}")
            p = a * self._pq1[0] + self._pq2[0]
            q = a * self._pq1[1] + self._pq2[1]
            d = self._d1.mul_int(a).add(self._d2, self.prec)
            self._pq2 = self._pq1
            self._pq1 = (p, q)
            self._d2 = self._d1
            self._d1 = d
            self.emitted_count = k + 1
            return a

    def tail_enclosure(self, guard: int = 64) -> Interval:
        """Enclosure of the current (not yet emitted) complete quotient."""
        if self._d1.contains_zero():
            self._refine()
        return self._d2.neg().round(guard).div(self._d1.round(guard), guard)

    def __iter__(self):
        return self

    def __next__(self) -> int:
        return self.next_quotient()


class ExactCFStream:
    """Integer polynomial-shift expansion (Lagrange).  Exact: every floor is
    decided by integer sign tests; no rounding exists anywhere.

    After the first step the working cubic is assumed to have its only real
    root > 1 equal to the current tail (true when no other root of the input
    shares the unit interval of the target root; the stream verifies the
    sign structure it relies on and raises on violation)."""

    def __init__(self, root: CubicRoot):
        self.root = root
        self._f = root.cubic()
        self.emitted_count = 0

    def next_quotient(self) -> int:
        if self.emitted_count == 0:
            a = self._first_quotient()
        else:
            a = self._floor_tail()
        self._shift(a)
        self.emitted_count += 1
        return a

    def _first_quotient(self) -> int:
        f, lo, hi = self._f, self.root.lo, self.root.hi
        s_lo = f.sign_fraction(lo)
        a = math.floor(lo)
        j = a + 1
        while j <= hi:
            if Fraction(j) < lo:
                j += 1
                continue
            s = f.sign_int(j)
            if s == 0:
                raise TerminatedCFError(f"rational root at {j}")
            if s == s_lo:
                a = j
                j += 1
            else:
                break
        return a

    def _floor_tail(self) -> int:
        f = self._f
        s1 = f.sign_int(1)
        if s1 == 0:
            raise TerminatedCFError("tail exactly 1")
        sign_inf = 1 if f.c3 > 0 else -1
        if s1 == sign_inf:
            raise ValueError("no sign change in (1, inf): root structure violated")
        lo, hi = 1, 2
        while True:
            s = f.sign_int(hi)
            if s == 0:
                raise TerminatedCFError(f"tail exactly {hi}")
            if s != s1:
                break
            lo, hi = hi, hi * 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            s = f.sign_int(mid)
            if s == 0:
                raise TerminatedCFError(f"tail exactly {mid}")
            if s == s1:
                lo = mid
            else:
                hi = mid
        return lo

    def _shift(self, a: int):
        # f(a + y) = e3 y^3 + e2 y^2 + e1 y + e0, then tail' = 1/y:
        # new cubic is e0 x^3 + e1 x^2 + e2 x + e3
        c3, c2, c1, c0 = self._f.c3, self._f.c2, self._f.c1, self._f.c0
        e3 = c3
        e2 = 3 * c3 * a + c2
        e1 = (3 * c3 * a + 2 * c2) * a + c1
        e0 = ((c3 * a + c2) * a + c1) * a + c0
        if e0 == 0:
            raise TerminatedCFError(f"tail exactly {a}")
        self._f = Cubic(e0, e1, e2, e3)


# -- quotient file IO ------------------------------------------------------


def read_quotients(path, limit: int | None = None) -> list[int]:
    out: list[int] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise QuotientFileError(f"{path}:{lineno + 1}: expected 'index\\tquotient'")
            try:
                idx, a = int(parts[0]), int(parts[1])
            except ValueError:
                raise QuotientFileError(f"{path}:{lineno + 1}: non-integer field") from None
            if idx != len(out):
                raise QuotientFileError(
                    f"{path}:{lineno + 1}: index {idx}, expected {len(out)}"
                )
            out.append(a)
            if limit is not None and len(out) >= limit:
                break
    return out


def _checkpoint_path(out_path, checkpoint_dir=None):
    env = os.environ.get("BADPAIRS_CHECKPOINT_DIR")
    base = checkpoint_dir or env
    name = os.path.basename(str(out_path)) + ".ckpt.json"
    if base:
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, name)
    return str(out_path) + ".ckpt.json"


def _write_checkpoint(ckpt_path, stream: CFStream):
    tail = stream.tail_enclosure()
    tmp = ckpt_path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(
            {
                "emitted_count": stream.emitted_count,
                "prec": stream.prec,
                "tail_lo": str(tail.lo),
                "tail_hi": str(tail.hi),
                "tail_exp": tail.exp,
            },
            fh,
        )
    os.replace(tmp, ckpt_path)


def _resume_stream(root: CubicRoot, quotients: list[int], ckpt) -> CFStream:
    """Rebuild a stream positioned after `quotients`, verifying the last
    three recorded terms by re-deriving them."""
    n = len(quotients)
    back = min(3, n)
    stream = CFStream(root, initial_prec=int(ckpt["prec"]) if ckpt else 256)
    p2, q2 = 0, 1
    p1, q1 = 1, 0
    for a in quotients[: n - back]:
        p2, q2, p1, q1 = p1, q1, a * p1 + p2, a * q1 + q2
    stream._pq2 = (p2, q2)
    stream._pq1 = (p1, q1)
    stream.emitted_count = n - back
    stream._rebuild_residuals()
    for i in range(n - back, n):
        a = stream.next_quotient()
        if a != quotients[i]:
            raise QuotientFileError(
                f"checkpoint corruption: re-derived a_{i}={a}, file has {quotients[i]}"
            )
    if ckpt is not None and ckpt.get("emitted_count") == n:
        tail = stream.tail_enclosure()
        saved = Interval(int(ckpt["tail_lo"]), int(ckpt["tail_hi"]), int(ckpt["tail_exp"]))
        if not tail.intersects(saved):
            raise QuotientFileError("checkpoint corruption: tail enclosure mismatch")
    return stream


def expand_quotients(
    root: CubicRoot,
    n_terms: int,
    path,
    checkpoint_dir=None,
    progress=None,
) -> list[int]:
    """Extend the quotient file at `path` to at least n_terms lines
    (append-only, resumable) and return the first n_terms quotients."""
    path = str(path)
    existing = read_quotients(path) if os.path.exists(path) else []
    if len(existing) >= n_terms:
        return existing[:n_terms]
    ckpt_path = _checkpoint_path(path, checkpoint_dir)
    ckpt = None
    if existing and os.path.exists(ckpt_path):
        try:
            with open(ckpt_path) as fh:
                ckpt = json.load(fh)
        except (OSError, ValueError):
            ckpt = None
    if existing:
        stream = _resume_stream(root, existing, ckpt)
    else:
        stream = CFStream(root)
    out = list(existing)
    with open(path, "a") as fh:
        while stream.emitted_count < n_terms:
            k = stream.emitted_count
            a = stream.next_quotient()
            out.append(a)
            fh.write(f"{k}\t{a}\n")
            if stream.emitted_count % CHECKPOINT_EVERY == 0:
                fh.flush()
                _write_checkpoint(ckpt_path, stream)
            if progress is not None:
                progress(stream.emitted_count)
        fh.flush()
    _write_checkpoint(ckpt_path, stream)
    return out
