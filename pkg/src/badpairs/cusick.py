"""From a pattern hit to a certified approximation constant.

Given consecutive convergents (P_k, Q_k), (P_{k+1}, Q_{k+1}) of theta, the
unimodular pair

    alpha = p*theta + q*theta^2   with (p, q) = ( Q_k,   -P_k)
    beta  = r*theta + s*theta^2   with (r, s) = (-Q_{k+1}, P_{k+1})

completes {1, alpha, beta} to an integral basis.  The constant

    c* = 1 / max(|A+B+C|, |A-B+C|, 49/|4A|, 49/|4C|)

is evaluated from the exact field elements A, B, C under the identity
embedding with adaptive certified precision.  The identity B^2 - 4AC = +-49
must hold exactly and is enforced.

The sign choice for (r, s) is calibrated: it makes the fractional parts of
both alpha and beta come out as the published reference values (negating a
column pair only swaps the roles of |A+B+C| and |A-B+C|, so c* is
unaffected).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cfrac import Convergent, convergents_at
from .dyadic import Interval, interval_max
from .field import Embedding, FieldElement, conjugate_constants, fe_eval
from .patterns import PatternHit

ACHIEVING_TERMS = ("A+B+C", "A-B+C", "49/4A", "49/4C")

_MAX_REL_PREC = 1 << 24


class ExactnessError(Exception):
    """An identity that must hold exactly failed: internal invariant bug."""


@dataclass(frozen=True)
class IntegralBasis:
    p: int
    q: int
    r: int
    s: int
    alpha: FieldElement
    beta: FieldElement
    provenance: tuple[int, int]  # the two convergent indices

    def determinant(self) -> int:
        return self.p * self.s - self.q * self.r


@dataclass(frozen=True)
class ABCTriple:
    A: FieldElement
    B: FieldElement
    C: FieldElement


@dataclass(frozen=True)
class CStarCertificate:
    cstar_decimal: str
    achieving_term: tuple[str, ...]  # singleton unless an exact tie is certified
    abc: ABCTriple
    basis: IntegralBasis
    alpha_frac: str
    beta_frac: str
    discriminant: int  # +49 or -49, exact


def build_basis(convergent_k: Convergent, convergent_next: Convergent) -> IntegralBasis:
    """Integral basis from two consecutive convergents of theta."""
    det = convergent_k.P * convergent_next.Q - convergent_next.P * convergent_k.Q
    if det not in (1, -1):
        raise ValueError(
            f"convergents {convergent_k.index},{convergent_next.index} are not "
            f"consecutive (determinant {det})"
        )
    p, q = convergent_k.Q, -convergent_k.P
    r, s = -convergent_next.Q, convergent_next.P
    basis = IntegralBasis(
        p=p,
        q=q,
        r=r,
        s=s,
        alpha=FieldElement.of(0, p, q),
        beta=FieldElement.of(0, r, s),
        provenance=(convergent_k.index, convergent_next.index),
    )
    if basis.determinant() not in (1, -1):
        raise ExactnessError("unimodularity lost in basis construction")
    return basis


def compute_ABC(basis: IntegralBasis, abc=None) -> ABCTriple:
    """(A,B,C)^T = M (a,b,c)^T with
    M = [[s^2, -rs, r^2], [-2qs, ps+qr, -2pr], [q^2, -pq, p^2]]."""
    a, b, c = abc if abc is not None else conjugate_constants()
    p, q, r, s = basis.p, basis.q, basis.r, basis.s
    A = a.scale(s * s) + b.scale(-r * s) + c.scale(r * r)
    B = a.scale(-2 * q * s) + b.scale(p * s + q * r) + c.scale(-2 * p * r)
    C = a.scale(q * q) + b.scale(-p * q) + c.scale(p * p)
    return ABCTriple(A, B, C)


def discriminant_check(basis: IntegralBasis, abc: ABCTriple) -> int:
    """B^2 - 4AC must be exactly +-49; returns the signed value."""
    disc = abc.B * abc.B - (abc.A * abc.C).scale(4)
    if not disc.is_rational() or disc.x not in (49, -49):
        raise ExactnessError(f"B^2-4AC = {disc}, expected +-49 (basis {basis})")
    return int(disc.x)


def _candidate_elements(abc: ABCTriple) -> list[FieldElement]:
    return [abc.A + abc.B + abc.C, abc.A - abc.B + abc.C, abc.A, abc.C]


def _candidate_intervals(elems, prec: int) -> list[Interval]:
    """|A+B+C|, |A-B+C|, 49/|4A|, 49/|4C| as certified intervals."""
    out = []
    for i, u in enumerate(elems):
        iv = fe_eval(u, Embedding.ROOT0, prec).abs()
        if i >= 2:
            while iv.contains_zero():
                prec *= 2
                iv = fe_eval(u, Embedding.ROOT0, prec).abs()
            iv = Interval.from_int(49).div(iv.mul_int(4), prec)
        out.append(iv)
    return out


def cstar_interval(basis: IntegralBasis, rel_prec: int, abc: ABCTriple | None = None):
    """(c* enclosure, per-candidate intervals) at a given relative precision."""
    if abc is None:
        abc = compute_ABC(basis)
    elems = _candidate_elements(abc)
    cands = _candidate_intervals(elems, rel_prec)
    mx = interval_max(cands)
    return mx.inv(rel_prec), cands, mx


def cstar(basis: IntegralBasis, digits: int, frac_digits: int | None = None) -> CStarCertificate:
    """Certified decimal value of c* (truncated to `digits` fractional
    digits) with the achieving max-term, plus the fractional parts of
    alpha and beta (at `frac_digits`, default `digits`)."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    abc = compute_ABC(basis)
    disc = discriminant_check(basis, abc)
    # `rel` is the relative precision of the candidate values, sized for the
    # decimal output; fe_eval starts near 2*max(bits of p,q,r,s) + rel bits
    # absolute (the candidate coefficients are quadratic in p,q,r,s) and
    # doubles on cancellation
    rel = 4 * digits + 128
    decimal = None
    achieving: tuple[str, ...] = ()
    for _ in range(32):
        cs, cands, mx = cstar_interval(basis, rel, abc)
        decimal = cs.truncated_decimal(digits)
        winners = tuple(
            ACHIEVING_TERMS[i] for i, iv in enumerate(cands) if iv.intersects(mx)
        )
        if decimal is not None and len(winners) == 1:
            achieving = winners
            break
        if decimal is not None and rel >= 16 * digits + 2048:
            # ambiguity clause: candidates tie to the requested digits
            per = [iv.inv(rel).truncated_decimal(digits) for iv in cands if iv.intersects(mx)]
            if all(d == decimal for d in per):
                achieving = winners
                break
        rel *= 2
        if rel > _MAX_REL_PREC:
            raise ExactnessError("c* failed to certify at extreme precision")
    alpha_frac, beta_frac = frac_parts(basis, frac_digits or digits)
    return CStarCertificate(
        cstar_decimal=decimal,
        achieving_term=achieving,
        abc=abc,
        basis=basis,
        alpha_frac=alpha_frac,
        beta_frac=beta_frac,
        discriminant=disc,
    )


def _frac_decimal(u: FieldElement, digits: int) -> str:
    """Certified decimal truncation of frac(value of u under ROOT0)."""
    if u.is_zero():
        return "0." + "0" * digits if digits else "0"
    mag_bits = max(
        abs(u.x.numerator).bit_length(),
        abs(u.y.numerator).bit_length(),
        abs(u.z.numerator).bit_length(),
    )
    prec = mag_bits + 4 * digits + 128
    for _ in range(32):
        iv = fe_eval(u, Embedding.ROOT0, prec)
        fl = iv.floor_unique()
        if fl is not None:
            frac_iv = iv.sub(Interval.from_int(fl))
            dec = frac_iv.truncated_decimal(digits)
            if dec is not None:
                return dec
        prec *= 2
        if prec > _MAX_REL_PREC:
            raise ExactnessError("fractional part failed to certify")
    raise ExactnessError("fractional part failed to certify")


def frac_parts(basis: IntegralBasis, digits: int) -> tuple[str, str]:
    if digits < 1:
        raise ValueError("digits must be >= 1")
    return _frac_decimal(basis.alpha, digits), _frac_decimal(basis.beta, digits)


@dataclass(frozen=True)
class TruncationCandidate:
    k: int
    cstar_decimal: str


def select_best_truncation(
    hit: PatternHit, quotients, digits: int = 61, select_digits: int = 12
):
    """Evaluate c* for every consecutive-convergent pair (k, k+1) with k in
    [start_index - 1, start_index + pattern_length - 1]; return the
    maximizing basis, its certificate, and the logged candidate values."""
    lo = max(0, hit.start_index - 1)
    hi = hit.start_index + hit.length - 1
    need = set(range(lo, hi + 2))
    convs = convergents_at(quotients, need)
    best_k = None
    best_val = None
    candidates: list[TruncationCandidate] = []
    for k in range(lo, hi + 1):
        basis = build_basis(convs[k], convs[k + 1])
        rel = 4 * select_digits + 128
        while True:
            cs, _, _ = cstar_interval(basis, rel)
            dec = cs.truncated_decimal(select_digits)
            if dec is not None:
                break
            rel *= 2
        candidates.append(TruncationCandidate(k, dec))
        val = Fraction(int(dec.replace(".", "").replace("-", "")), 10**select_digits)
        if best_val is None or val > best_val:
            best_val = val
            best_k = k
    basis = build_basis(convs[best_k], convs[best_k + 1])
    cert = cstar(basis, digits)
    return basis, cert, candidates


def successive_records(hits, quotients, select_digits: int = 12):
    """Hits whose best-truncation c* exceeds every earlier hit's, in start
    order: the reproduction of the published case list."""
    records = []
    best = None
    for hit in sorted(hits, key=lambda h: h.start_index):
        basis, cert, candidates = select_best_truncation(
            hit, quotients, digits=select_digits, select_digits=select_digits
        )
        val = Fraction(int(cert.cstar_decimal.replace(".", "")), 10**select_digits)
        if best is None or val > best:
            best = val
            records.append((hit, basis, cert))
    return records


def certificate_to_json_obj(hit: PatternHit, cert: CStarCertificate, candidates=None) -> dict:
    basis = cert.basis
    obj = {
        "positions": hit.positions,
        "pattern": hit.to_json_obj(),
        "p": str(basis.p),
        "q": str(basis.q),
        "r": str(basis.r),
        "s": str(basis.s),
        "cstar": cert.cstar_decimal,
        "alpha": cert.alpha_frac,
        "beta": cert.beta_frac,
        "achieving_term": "|".join(cert.achieving_term),
        "checks": {"det": basis.determinant(), "disc": f"{cert.discriminant:+d}"},
        "truncation_index": basis.provenance[0],
    }
    if candidates is not None:
        obj["candidates"] = [{"k": c.k, "cstar": c.cstar_decimal} for c in candidates]
    return obj


def certificate_to_json(hit, cert, candidates=None) -> str:
    return json.dumps(certificate_to_json_obj(hit, cert, candidates), sort_keys=True, indent=2)
