"""Exact arithmetic in the totally real cubic field Q(theta),
theta = 2cos(2pi/7), the root of x^3 + x^2 - 2x - 1 in (1, 2).

Elements are rational triples (x, y, z) <-> x + y*theta + z*theta^2.
Products reduce by theta^3 = -theta^2 + 2*theta + 1.  The three real
embeddings send theta to the three roots of the defining cubic; certified
interval images come from validated root refinement plus outward-rounded
dyadic arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .dyadic import Interval
from .roots import Cubic, CubicRootRefiner

Rational = Fraction

#: defining cubic of theta
MIN_POLY = Cubic(1, 1, -2, -1)


class Embedding(enum.Enum):
    """The three real embeddings, identified by disjoint isolating intervals."""

    ROOT0 = 0  # theta   = 2cos(2pi/7) in (1, 2)
    ROOT1 = 1  # theta_1 = 2cos(4pi/7) in (-1, 0)
    ROOT2 = 2  # theta_2 = 2cos(6pi/7) in (-2, -1)


_ISOLATING = {
    Embedding.ROOT0: (Fraction(1), Fraction(2)),
    Embedding.ROOT1: (Fraction(-1), Fraction(0)),
    Embedding.ROOT2: (Fraction(-2), Fraction(-1)),
}

_REFINERS: dict[Embedding, CubicRootRefiner] = {}


def root_refiner(e: Embedding) -> CubicRootRefiner:
    r = _REFINERS.get(e)
    if r is None:
        lo, hi = _ISOLATING[e]
        r = CubicRootRefiner(MIN_POLY, lo, hi)
        _REFINERS[e] = r
    return r


@dataclass(frozen=True)
class FieldElement:
    """x + y*theta + z*theta^2 with canonical rational coordinates."""

    x: Fraction
    y: Fraction
    z: Fraction

    @staticmethod
    def of(x, y=0, z=0) -> "FieldElement":
        return FieldElement(Fraction(x), Fraction(y), Fraction(z))

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.x, -self.y, -self.z)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        x1, y1, z1 = self.x, self.y, self.z
        x2, y2, z2 = other.x, other.y, other.z
        c0 = x1 * x2
        c1 = x1 * y2 + y1 * x2
        c2 = x1 * z2 + y1 * y2 + z1 * x2
        c3 = y1 * z2 + z1 * y2
        c4 = z1 * z2
        # theta^3 = 1 + 2*theta - theta^2,  theta^4 = -1 - theta + 3*theta^2
        return FieldElement(c0 + c3 - c4, c1 + 2 * c3 - c4, c2 - c3 + 3 * c4)

    def scale(self, r) -> "FieldElement":
        r = Fraction(r)
        return FieldElement(self.x * r, self.y * r, self.z * r)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def is_rational(self) -> bool:
        return self.y == 0 and self.z == 0

    def inverse(self) -> "FieldElement":
        """Exact multiplicative inverse (Cramer on the multiplication matrix)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero field element")
        one = FieldElement.of(1)
        theta = FieldElement.of(0, 1)
        theta2 = FieldElement.of(0, 0, 1)
        # columns: self*1, self*theta, self*theta^2
        cols = [self * one, self * theta, self * theta2]
        m = [[cols[j].x, cols[j].y, cols[j].z] for j in range(3)]
        # solve M^T? rows are coordinates: we need v with sum v_j * cols[j] = e0
        a = [[m[0][i], m[1][i], m[2][i]] for i in range(3)]  # a[i][j] = coord i of col j
        det = _det3(a)
        if det == 0:
            raise ZeroDivisionError("singular multiplication matrix")
        rhs = [Fraction(1), Fraction(0), Fraction(0)]
        v = []
        for j in range(3):
            aj = [row[:] for row in a]
            for i in range(3):
                aj[i][j] = rhs[i]
            v.append(_det3(aj) / det)
        return FieldElement(v[0], v[1], v[2])

    # -- serialization -----------------------------------------------------

    def to_triple_str(self) -> str:
        """Exact "x;y;z" with each rational as "num/den"."""
        return ";".join(
            f"{c.numerator}/{c.denominator}" for c in (self.x, self.y, self.z)
        )

    @staticmethod
    def from_triple_str(s: str) -> "FieldElement":
        parts = s.split(";")
        if len(parts) != 3:
            raise ValueError(f"expected 3 components in {s!r}")
        return FieldElement(*(Fraction(p) for p in parts))


def _det3(a) -> Fraction:
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


ZERO = FieldElement.of(0)
ONE = FieldElement.of(1)
THETA = FieldElement.of(0, 1)
THETA2 = FieldElement.of(0, 0, 1)


def fe_eval(u: FieldElement, e: Embedding, precision_bits: int) -> Interval:
    """Certified interval image of u under embedding e.

    Width is at most 2^(1-precision_bits) * max(1, |value|); the working
    precision adapts upward when coefficient size or cancellation demands it.
    """
    if precision_bits < 8:
        raise ValueError("precision_bits must be >= 8")
    coeff_bits = max(
        abs(u.x.numerator).bit_length(),
        abs(u.y.numerator).bit_length(),
        abs(u.z.numerator).bit_length(),
        1,
    )
    w = precision_bits + 16 + coeff_bits
    refiner = root_refiner(e)
    while True:
        th = refiner.enclosure(w)
        th2 = th.mul(th, w + 8)
        acc = Interval.from_fraction(u.x, w + 8)
        if u.y != 0:
            acc = acc.add(th.mul_fraction(u.y, w + 8), w + 8)
        if u.z != 0:
            acc = acc.add(th2.mul_fraction(u.z, w + 8), w + 8)
        if acc.width_ok(precision_bits):
            return acc
        w *= 2


def conjugate_constants() -> tuple[FieldElement, FieldElement, FieldElement]:
    """The three symmetric conjugate products (a, b, c) used by the closed
    form, expressed exactly in Q(theta).

    With theta_1 + theta_2 = -1 - theta and theta_1*theta_2 = theta^2 + theta - 2
    (both consequences of the defining cubic), the symmetric products

        a = (theta_2^2 - theta^2) (theta^2 - theta_1^2)
        b = (theta_2^2 - theta^2) (theta_1 - theta)
            + (theta_2 - theta) (theta_1^2 - theta^2)
        c = (theta - theta_2) (theta_1 - theta)

    reduce to elements of Q(theta).
    """
    th = THETA
    s = FieldElement.of(-1, -1, 0)  # theta_1 + theta_2
    p = FieldElement.of(-2, 1, 1)  # theta_1 * theta_2
    th2 = th * th
    th3 = th2 * th
    th4 = th2 * th2
    sum_sq = s * s - p.scale(2)  # theta_1^2 + theta_2^2
    a = -(th4 - th2 * sum_sq + p * p)
    b = p * s - th * sum_sq - th2 * s + th3.scale(2)
    c = th * s - th2 - p
    return a, b, c
