"""Validated refinement of real roots of integer cubics.

A root is located by exact sign evaluations at rational / dyadic points
(no rounding anywhere), seeded by bisection and then polished by Newton
steps that double the working precision.  The returned enclosure always
has sign-verified endpoints, so it is a certificate, not a heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import Interval


class RationalRootError(Exception):
    """The polynomial vanished exactly at a test point."""


@dataclass(frozen=True)
class Cubic:
    """c3*x^3 + c2*x^2 + c1*x + c0 with integer coefficients."""

    c3: int
    c2: int
    c1: int
    c0: int

    def eval_fraction(self, x: Fraction) -> Fraction:
        return ((Fraction(self.c3) * x + self.c2) * x + self.c1) * x + self.c0

    def sign_fraction(self, x: Fraction) -> int:
        v = self.eval_fraction(x)
        return (v > 0) - (v < 0)

    def sign_dyadic(self, m: int, p: int) -> int:
        """Sign of f(m / 2^p), p >= 0, computed exactly in integers."""
        t = 1 << p
        v = self.c3 * m * m * m + self.c2 * m * m * t + self.c1 * m * t * t + self.c0 * t * t * t
        return (v > 0) - (v < 0)

    def sign_int(self, j: int) -> int:
        v = ((self.c3 * j + self.c2) * j + self.c1) * j + self.c0
        return (v > 0) - (v < 0)

    def deriv_scaled(self, m: int, p: int) -> int:
        """2^(2p) * f'(m / 2^p)."""
        t = 1 << p
        return 3 * self.c3 * m * m + 2 * self.c2 * m * t + self.c1 * t * t

    def value_scaled(self, m: int, p: int) -> int:
        """2^(3p) * f(m / 2^p)."""
        t = 1 << p
        return self.c3 * m * m * m + self.c2 * m * m * t + self.c1 * m * t * t + self.c0 * t * t * t


class CubicRootRefiner:
    """Refines the unique root of `cubic` inside the open rational interval
    (iso_lo, iso_hi) to arbitrary precision, caching progress."""

    def __init__(self, cubic: Cubic, iso_lo: Fraction, iso_hi: Fraction):
        if iso_lo >= iso_hi:
            raise ValueError("empty isolating interval")
        slo = cubic.sign_fraction(iso_lo)
        shi = cubic.sign_fraction(iso_hi)
        if slo == 0 or shi == 0 or slo == shi:
            raise ValueError("isolating interval endpoints must bracket a sign change")
        self.cubic = cubic
        self.iso_lo = iso_lo
        self.iso_hi = iso_hi
        self._sign_lo = slo
        # cached certified dyadic bracket: root in (m_lo/2^p, m_hi/2^p)
        self._p: int | None = None
        self._m_lo = 0
        self._m_hi = 0

    # -- public API --------------------------------------------------------

    def enclosure(self, prec: int) -> Interval:
        """Certified enclosure of width <= 2^(-prec) (endpoints sign-verified)."""
        if self._p is None:
            self._initial_bracket()
        while self._p - 2 < prec:  # bracket width is <= 4 * 2^-p
            self._newton_double(target=prec + 24)
        return Interval(self._m_lo, self._m_hi, -self._p)

    # -- internals ---------------------------------------------------------

    def _initial_bracket(self):
        """Dyadic cell inside (iso_lo, iso_hi) with a sign change."""
        f = self.cubic
        lo, hi = self.iso_lo, self.iso_hi
        # rational bisection until the interval is comfortably sub-unit
        while hi - lo > Fraction(1, 16):
            mid = (lo + hi) / 2
            s = f.sign_fraction(mid)
            if s == 0:
                raise RationalRootError(f"rational root at {mid}")
            if s == self._sign_lo:
                lo = mid
            else:
                hi = mid
        p = 8
        while True:
            n_lo = (lo.numerator * (1 << p)) // lo.denominator + 1  # > lo
            n_hi = -((-hi.numerator * (1 << p)) // hi.denominator) - 1  # < hi
            prev_sign = None
            found = False
            for n in range(n_lo, n_hi + 1):
                s = f.sign_dyadic(n, p)
                if s == 0:
                    raise RationalRootError(f"rational root at {n}/2^{p}")
                if prev_sign is not None and s != prev_sign:
                    self._p = p
                    self._m_lo = n - 1
                    self._m_hi = n
                    found = True
                    break
                prev_sign = s
            if found:
                return
            p += 2
            if p > 64:
                raise RationalRootError("could not bracket root dyadically")

    def _bisect_to(self, p_target: int):
        f = self.cubic
        s_lo = f.sign_dyadic(self._m_lo, self._p)
        while self._p < p_target:
            self._m_lo <<= 1
            self._m_hi <<= 1
            self._p += 1
            mid = (self._m_lo + self._m_hi) // 2
            s = f.sign_dyadic(mid, self._p)
            if s == 0:
                raise RationalRootError("rational root hit during bisection")
            if s == s_lo:
                self._m_lo = mid
            else:
                self._m_hi = mid

    def _newton_double(self, target: int):
        """Advance the certified bracket towards precision `target` by one
        Newton step (at most doubling the current precision)."""
        f = self.cubic
        if self._p < 64:
            self._bisect_to(64)
        p = self._p
        new_p = min(2 * p, target)
        shift = new_p - p
        n = ((self._m_lo + self._m_hi) // 2) << shift
        # one Newton step at the new precision
        fp = f.deriv_scaled(n, new_p)
        if fp != 0:
            fv = f.value_scaled(n, new_p)
            # f/f' in units of 2^-new_p is value_scaled/deriv_scaled/2^new_p... :
            # value_scaled = 2^(3p') f, deriv_scaled = 2^(2p') f', ratio = 2^(p') f/f'
            n -= fv // fp
        # certify: widen symmetrically until the endpoints bracket the root
        t = 2
        s_lo = f.sign_dyadic(n - t, new_p)
        s_hi = f.sign_dyadic(n + t, new_p)
        while s_lo == 0 or s_hi == 0 or s_lo == s_hi:
            t <<= 1
            if t > (1 << 20):
                # Newton went wrong; fall back to plain bisection
                self._bisect_to(new_p)
                return
            s_lo = f.sign_dyadic(n - t, new_p)
            s_hi = f.sign_dyadic(n + t, new_p)
        self._m_lo = n - t
        self._m_hi = n + t
        self._p = new_p
        # keep the bracket tight: a couple of bisection steps shave the
        # widening factor back off
        self._shrink()

    def _shrink(self):
        f = self.cubic
        s_lo = f.sign_dyadic(self._m_lo, self._p)
        while self._m_hi - self._m_lo > 4:
            mid = (self._m_lo + self._m_hi) // 2
            s = f.sign_dyadic(mid, self._p)
            if s == 0:
                raise RationalRootError("rational root hit during shrink")
            if s == s_lo:
                self._m_lo = mid
            else:
                self._m_hi = mid
