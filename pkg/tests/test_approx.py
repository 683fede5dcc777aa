import io
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from badpairs.approx import (
    BestApproxRecord,
    FixedPointReal,
    ResolutionExceededError,
    best_approx_scan,
    c_measure_1d,
    c_measure_2d,
    fibonacci_denominators,
    golden_ratio_fixed,
    read_records_csv,
    transient_report,
    write_records_csv,
)


def test_from_decimal_parsing():
    x = FixedPointReal.from_decimal("0.25")
    assert (x.mantissa, x.scale) == (25, 2)
    y = FixedPointReal.from_decimal("-3.5")
    assert y.value() == Fraction(-7, 2)
    z = FixedPointReal.from_decimal("7")
    assert z.value() == 7
    with pytest.raises(ValueError):
        FixedPointReal.from_decimal("abc")


def test_rescale_is_exact():
    x = FixedPointReal.from_decimal("0.5")
    assert x.rescaled(30).value() == Fraction(1, 2)
    with pytest.raises(ValueError):
        x.rescaled(0)


def test_resolution_guard():
    coarse = FixedPointReal.from_decimal("0.123456")
    with pytest.raises(ResolutionExceededError):
        c_measure_1d(coarse, 1000)


def _naive_measure(alpha: Fraction, beta: Fraction, q: int):
    def nearest(x):
        # round-half-up on the exact rational
        p = math.floor(x + Fraction(1, 2))
        return p, abs(x - p)

    p1, d1 = nearest(q * alpha)
    p2, d2 = nearest(q * beta)
    eps = max(d1, d2)
    return p1, p2, eps, q * eps * eps


@given(
    st.integers(min_value=0, max_value=10**30 - 1),
    st.integers(min_value=0, max_value=10**30 - 1),
    st.integers(min_value=1, max_value=10**4),
)
def test_measure_matches_exact_rational_oracle(m1, m2, q):
    a = FixedPointReal(m1, 30)
    b = FixedPointReal(m2, 30)
    p1, p2, eps, c = c_measure_2d(a, b, q)
    e1, e2, eeps, ec = _naive_measure(a.value(), b.value(), q)
    assert (p1, p2, eps, c) == (e1, e2, eeps, ec)


def test_scan_matches_naive_rescan():
    a = FixedPointReal.from_decimal("0.4563286858107963651609830446124431560745665647128596153008802")
    b = FixedPointReal.from_decimal("0.4781573193903170892895817415258772866671562381178937772663665")
    q_max = 10**4
    records = list(best_approx_scan(a, b, q_max))
    # naive: recompute every q, keep strict running minimum of eps
    best = None
    expected = []
    for q in range(1, q_max + 1):
        p1, p2, eps, c = c_measure_2d(a, b, q)
        if best is None or eps < best:
            best = eps
            expected.append(BestApproxRecord(q, p1, p2, eps, c))
    assert records == expected


def test_scan_records_strictly_improve():
    a = golden_ratio_fixed(40)
    b = FixedPointReal.from_decimal("0." + "3" * 40)
    records = list(best_approx_scan(a, b, 10**4))
    assert records[0].q == 1
    for r1, r2 in zip(records, records[1:]):
        assert r2.q > r1.q
        assert r2.eps < r1.eps


def test_golden_ratio_1d_calibration():
    # q*||q*phi|| along Fibonacci denominators tends to 1/sqrt(5); the
    # minimum over q in [100, 10^6] is within 1e-3 of it
    phi = golden_ratio_fixed(40)
    vals = [c_measure_1d(phi, q) for q in fibonacci_denominators(100, 10**6)]
    m = min(float(v) for v in vals)
    assert abs(m - 5**-0.5) < 1e-3


def test_fibonacci_denominators():
    assert fibonacci_denominators(1, 100) == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
    assert fibonacci_denominators(10, 60) == [13, 21, 34, 55]


def test_transient_report():
    recs = [
        BestApproxRecord(1, 0, 0, Fraction(1, 2), Fraction(4, 10)),
        BestApproxRecord(3, 1, 1, Fraction(1, 4), Fraction(3, 10)),
        BestApproxRecord(8, 2, 3, Fraction(1, 9), Fraction(1, 10)),
        BestApproxRecord(21, 5, 8, Fraction(1, 30), Fraction(2, 10)),
    ]
    rep = transient_report(recs, Fraction(2, 7))
    assert rep.transient_end_q == 3
    assert rep.min_c == Fraction(1, 10)
    assert rep.argmin_q == 8
    with pytest.raises(ValueError):
        transient_report([], 0)


def test_csv_roundtrip():
    a = golden_ratio_fixed(40)
    b = FixedPointReal.from_decimal("0.1415926535897932384626433832795028841971")
    records = list(best_approx_scan(a, b, 500))
    buf = io.StringIO()
    write_records_csv(records, buf)
    buf.seek(0)
    rows = read_records_csv(buf)
    assert len(rows) == len(records)
    for rec, row in zip(records, rows):
        assert row["q"] == rec.q
        assert row["p1"] == rec.p1 and row["p2"] == rec.p2
        assert abs(row["c"] - float(rec.c)) <= 1e-11 * max(1.0, float(rec.c))
    buf2 = io.StringIO("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_records_csv(buf2)


@settings(deadline=None)
@given(st.integers(min_value=1, max_value=300))
def test_scan_prefix_property(q_max):
    a = golden_ratio_fixed(30)
    b = FixedPointReal.from_decimal("0." + "142857" * 5)
    full = [r for r in best_approx_scan(a, b, 300) if r.q <= q_max]
    assert list(best_approx_scan(a, b, q_max)) == full
