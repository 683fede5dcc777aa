"""Dyadic interval arithmetic on arbitrary-precision integers.

An interval stores two mantissas and a shared exponent: the represented
range is [lo*2^exp, hi*2^exp].  All operations round outward, so any real
value contained in the inputs is contained in the output.  Exponents are
plain ints, mantissas are plain ints; exact halving and directed rounding
need no floating-point rounding modes.
"""

from __future__ import annotations

from fractions import Fraction


def _shr_floor(m: int, s: int) -> int:
    return m >> s


def _shr_ceil(m: int, s: int) -> int:
    return -((-m) >> s)


def _floor_div(a: int, b: int) -> int:
    # Python's // floors for all sign combinations
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class Interval:
    """Closed dyadic interval [lo*2^exp, hi*2^exp]."""

    __slots__ = ("lo", "hi", "exp")

    def __init__(self, lo: int, hi: int, exp: int = 0):
        if lo > hi:
            raise ValueError(f"inverted interval: lo={lo} hi={hi}")
        self.lo = lo
        self.hi = hi
        self.exp = exp

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "Interval":
        return Interval(n, n, 0)

    @staticmethod
    def from_fraction(fr: Fraction, prec: int) -> "Interval":
        """Smallest prec-bit dyadic enclosure of a rational."""
        num, den = fr.numerator, fr.denominator
        if den == 1:
            return Interval(num, num, 0)
        k = prec + max(0, den.bit_length() - abs(num).bit_length()) + 2
        scaled = num << k
        return Interval(_floor_div(scaled, den), _ceil_div(scaled, den), -k)

    # -- rounding ----------------------------------------------------------

    def round(self, prec: int) -> "Interval":
        """Outward-round mantissas to at most prec bits."""
        b = max(abs(self.lo).bit_length(), abs(self.hi).bit_length())
        if b <= prec:
            return self
        s = b - prec
        return Interval(_shr_floor(self.lo, s), _shr_ceil(self.hi, s), self.exp + s)

    # -- arithmetic --------------------------------------------------------

    def neg(self) -> "Interval":
        return Interval(-self.hi, -self.lo, self.exp)

    def _aligned(self, other: "Interval"):
        e = min(self.exp, other.exp)
        sa, sb = self.exp - e, other.exp - e
        return (self.lo << sa, self.hi << sa, other.lo << sb, other.hi << sb, e)

    def add(self, other: "Interval", prec: int | None = None) -> "Interval":
        alo, ahi, blo, bhi, e = self._aligned(other)
        out = Interval(alo + blo, ahi + bhi, e)
        return out.round(prec) if prec is not None else out

    def sub(self, other: "Interval", prec: int | None = None) -> "Interval":
        return self.add(other.neg(), prec)

    def mul(self, other: "Interval", prec: int | None = None) -> "Interval":
        c1 = self.lo * other.lo
        c2 = self.lo * other.hi
        c3 = self.hi * other.lo
        c4 = self.hi * other.hi
        out = Interval(min(c1, c2, c3, c4), max(c1, c2, c3, c4), self.exp + other.exp)
        return out.round(prec) if prec is not None else out

    def mul_int(self, n: int) -> "Interval":
        if n >= 0:
            return Interval(self.lo * n, self.hi * n, self.exp)
        return Interval(self.hi * n, self.lo * n, self.exp)

    def mul_fraction(self, fr: Fraction, prec: int) -> "Interval":
        num, den = fr.numerator, fr.denominator
        iv = self.mul_int(num)
        if den == 1:
            return iv.round(prec)
        b = max(abs(iv.lo).bit_length(), abs(iv.hi).bit_length())
        k = prec + max(0, den.bit_length() - b) + 2
        return Interval(
            _floor_div(iv.lo << k, den), _ceil_div(iv.hi << k, den), iv.exp - k
        ).round(prec)

    def div(self, other: "Interval", prec: int) -> "Interval":
        if other.contains_zero():
            raise ZeroDivisionError("interval division by an interval containing 0")
        k = prec + max(abs(other.lo).bit_length(), abs(other.hi).bit_length()) + 2
        corners_lo = []
        corners_hi = []
        for a in (self.lo, self.hi):
            sa = a << k
            for b in (other.lo, other.hi):
                corners_lo.append(_floor_div(sa, b))
                corners_hi.append(_ceil_div(sa, b))
        out = Interval(min(corners_lo), max(corners_hi), self.exp - other.exp - k)
        return out.round(prec)

    def inv(self, prec: int) -> "Interval":
        return Interval.from_int(1).div(self, prec)

    def abs(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return self.neg()
        return Interval(0, max(-self.lo, self.hi), self.exp)

    # -- queries -----------------------------------------------------------

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int | None:
        """Certified sign: +1, -1, 0 (exact zero), or None if undecided."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def _floor_endpoint(self, m: int) -> int:
        if self.exp >= 0:
            return m << self.exp
        return m >> (-self.exp)

    def floor_unique(self) -> int | None:
        """floor() of the represented value if the interval determines it."""
        flo = self._floor_endpoint(self.lo)
        fhi = self._floor_endpoint(self.hi)
        return flo if flo == fhi else None

    def width_fraction(self) -> Fraction:
        return Fraction(self.hi - self.lo) * Fraction(2) ** self.exp

    def to_fraction_lo(self) -> Fraction:
        return Fraction(self.lo) * Fraction(2) ** self.exp

    def to_fraction_hi(self) -> Fraction:
        return Fraction(self.hi) * Fraction(2) ** self.exp

    def mid_fraction(self) -> Fraction:
        return Fraction(self.lo + self.hi, 2) * Fraction(2) ** self.exp

    def contains(self, value: Fraction) -> bool:
        return self.to_fraction_lo() <= value <= self.to_fraction_hi()

    def intersects(self, other: "Interval") -> bool:
        alo, ahi, blo, bhi, _ = self._aligned(other)
        return alo <= bhi and blo <= ahi

    def width_ok(self, prec: int) -> bool:
        """True if width <= 2^(1-prec) * max(1, |value|)."""
        w = self.hi - self.lo
        mag = max(abs(self.lo), abs(self.hi))
        # one in mantissa units is 2^(-exp); compare via shifts, all ints
        if self.exp <= 0:
            one = 1 << (-self.exp)
        else:
            one = 1  # conservative: 2^-exp < 1 mantissa unit
        bound = max(mag, one)
        # w <= bound * 2^(1-prec)
        if prec >= 1:
            return (w << (prec - 1)) <= bound
        return w <= (bound << (1 - prec))

    # -- decimal output ----------------------------------------------------

    def truncated_decimal(self, digits: int) -> str | None:
        """Decimal truncation (toward -inf) with `digits` fractional digits,
        if every value in the interval truncates identically; else None."""
        scale = 10**digits
        nlo = self._scaled_floor(self.lo, scale)
        nhi = self._scaled_floor(self.hi, scale)
        if nlo != nhi:
            return None
        return _format_scaled(nlo, digits)

    def _scaled_floor(self, m: int, scale: int) -> int:
        n = m * scale
        if self.exp >= 0:
            return n << self.exp
        return n >> (-self.exp)

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi}, 2^{self.exp})"


def _format_scaled(n: int, digits: int) -> str:
    sign = "-" if n < 0 else ""
    n = abs(n) if n >= 0 else -n  # magnitude of floor; sign handled above
    scale = 10**digits
    if digits == 0:
        return f"{sign}{n}"
    return f"{sign}{n // scale}.{n % scale:0{digits}d}"


def interval_max(ivs: list[Interval]) -> Interval:
    """Enclosure of max(values): componentwise max of endpoints."""
    if not ivs:
        raise ValueError("empty interval list")
    e = min(iv.exp for iv in ivs)
    lo = max(iv.lo << (iv.exp - e) for iv in ivs)
    hi = max(iv.hi << (iv.exp - e) for iv in ivs)
    return Interval(lo, hi, e)
