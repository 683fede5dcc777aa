from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from badpairs.cfrac import (
    CFStream,
    CubicRoot,
    ExactCFStream,
    QuotientFileError,
    THETA_ROOT,
    convergents,
    convergents_at,
    expand_quotients,
    read_quotients,
)

# first 40 partial quotients of theta computed with mpmath (200-digit float,
# independent of everything in this package)
THETA_CF_40 = [
    1, 4, 20, 2, 3, 1, 6, 10, 5, 2, 2, 1, 2, 2, 1, 18, 1, 1, 3, 2,
    1, 2, 1, 2, 1, 39, 2, 1, 1, 1, 13, 1, 2, 1, 30, 1, 1, 1, 3, 2,
]


def _mpmath_cf(n):
    mpmath.mp.dps = 400
    x = 2 * mpmath.cos(2 * mpmath.pi / 7)
    out = []
    for _ in range(n):
        a = int(mpmath.floor(x))
        out.append(a)
        x = 1 / (x - a)
    return out


def test_frozen_prefix_matches_mpmath_oracle():
    assert _mpmath_cf(40) == THETA_CF_40


def test_interval_stream_matches_frozen_prefix():
    stream = CFStream(THETA_ROOT)
    assert [stream.next_quotient() for _ in range(40)] == THETA_CF_40


def test_exact_stream_matches_interval_stream_deep():
    n = 2000
    interval = CFStream(THETA_ROOT)
    exact = ExactCFStream(THETA_ROOT)
    for k in range(n):
        a1 = interval.next_quotient()
        a2 = exact.next_quotient()
        assert a1 == a2, f"disagreement at index {k}: {a1} != {a2}"


def test_convergent_recurrence_seeds():
    cs = list(convergents([1, 4, 2, 1]))
    assert (cs[0].P, cs[0].Q) == (1, 1)
    assert (cs[1].P, cs[1].Q) == (5, 4)
    assert (cs[2].P, cs[2].Q) == (11, 9)
    assert (cs[3].P, cs[3].Q) == (16, 13)


@given(st.lists(st.integers(min_value=1, max_value=50), min_size=2, max_size=30))
def test_convergent_determinant_alternates(quots):
    cs = list(convergents(quots))
    for k in range(1, len(cs)):
        det = cs[k].P * cs[k - 1].Q - cs[k - 1].P * cs[k].Q
        assert det == (-1) ** (k + 1)


@given(st.lists(st.integers(min_value=1, max_value=30), min_size=3, max_size=25))
def test_convergents_enclose_value(quots):
    # the value of the finite continued fraction lies between consecutive
    # convergents
    value = Fraction(quots[-1])
    for a in reversed(quots[:-1]):
        value = a + 1 / value
    cs = list(convergents(quots))
    for k in range(1, len(cs) - 1):
        lo = Fraction(cs[k - 1].P, cs[k - 1].Q)
        hi = Fraction(cs[k].P, cs[k].Q)
        if lo > hi:
            lo, hi = hi, lo
        assert lo <= value <= hi


def test_convergents_reject_nonpositive_quotient():
    with pytest.raises(ValueError):
        list(convergents([1, 0, 2]))


def test_convergents_at_lookup():
    got = convergents_at(THETA_CF_40, {0, 5, 12})
    assert set(got) == {0, 5, 12}
    full = list(convergents(THETA_CF_40))
    for i in (0, 5, 12):
        assert got[i] == full[i]
    with pytest.raises(ValueError):
        convergents_at(THETA_CF_40, {100})


def test_convergent_residual_shrinks(theta_quotients):
    # |Q_k theta - P_k| < 1/Q_{k+1}, checked exactly against a certified
    # enclosure of theta
    from badpairs.field import Embedding, root_refiner

    cs = list(convergents(theta_quotients[:50]))
    th = root_refiner(Embedding.ROOT0).enclosure(400)
    lo, hi = th.to_fraction_lo(), th.to_fraction_hi()
    for k in range(len(cs) - 1):
        c, cn = cs[k], cs[k + 1]
        worst = max(abs(c.Q * lo - c.P), abs(c.Q * hi - c.P))
        assert worst < Fraction(1, cn.Q)


def test_tail_enclosure_predicts_next_quotient():
    stream = CFStream(THETA_ROOT)
    for _ in range(30):
        tail = stream.tail_enclosure()
        a = tail.floor_unique()
        assert a is not None
        assert stream.next_quotient() == a


def test_golden_ratio_stream_is_all_ones():
    # x^3 - 2x^2 + 1 = (x - 1)(x^2 - x - 1): the root in (1.5, 2) is phi
    phi = CubicRoot((1, -2, 0, 1), Fraction(3, 2), Fraction(2))
    stream = CFStream(phi)
    assert [stream.next_quotient() for _ in range(200)] == [1] * 200


def test_read_quotients_errors(tmp_path):
    p = tmp_path / "q.tsv"
    p.write_text("0\t1\n1\t4\n3\t2\n")
    with pytest.raises(QuotientFileError):
        read_quotients(p)
    p.write_text("0\t1\nnot a line\n")
    with pytest.raises(QuotientFileError):
        read_quotients(p)
    p.write_text("0\t1\n1\tx\n")
    with pytest.raises(QuotientFileError):
        read_quotients(p)


def test_expand_quotients_roundtrip(tmp_path):
    p = tmp_path / "theta.tsv"
    first = expand_quotients(THETA_ROOT, 60, p)
    assert first == THETA_CF_40 + first[40:]
    assert read_quotients(p) == first


def test_expand_quotients_resume_identity(tmp_path):
    p1 = tmp_path / "one_shot.tsv"
    p2 = tmp_path / "resumed.tsv"
    direct = expand_quotients(THETA_ROOT, 300, p1)
    expand_quotients(THETA_ROOT, 120, p2)
    resumed = expand_quotients(THETA_ROOT, 300, p2)
    assert resumed == direct


def test_expand_quotients_detects_tampering(tmp_path):
    p = tmp_path / "theta.tsv"
    expand_quotients(THETA_ROOT, 50, p)
    lines = p.read_text().splitlines()
    idx, a = lines[49].split("\t")
    lines[49] = f"{idx}\t{int(a) + 1}"
    p.write_text("\n".join(lines) + "\n")
    with pytest.raises(QuotientFileError):
        expand_quotients(THETA_ROOT, 60, p)


@settings(deadline=None)
@given(st.integers(min_value=2, max_value=200))
def test_sqrt_like_periodicity(n):
    # x^3 - n x = x (x^2 - n): for non-square n the positive irrational root
    # is sqrt(n), whose expansion is eventually periodic; spot-check the
    # first terms against math.isqrt-based floor values
    import math

    r = math.isqrt(n)
    if r * r == n:
        return
    root = CubicRoot((1, 0, -n, 0), Fraction(r), Fraction(r + 1))
    stream = CFStream(root)
    assert stream.next_quotient() == r
    # a_1 = floor(1/(sqrt(n)-r)) = floor((sqrt(n)+r)/(n-r^2)), found by the
    # largest k with (k*(n-r^2) - r)^2 <= n, all in exact integers
    d = n - r * r
    a1 = 0
    k = 1
    while True:
        t = k * d - r
        if t > 0 and t * t > n:
            break
        a1 = k
        k += 1
    assert stream.next_quotient() == a1
