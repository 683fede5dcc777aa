import io

import pytest
from hypothesis import given, strategies as st

from badpairs.patterns import (
    PatternHit,
    PatternKind,
    find_patterns,
    rank_hits,
    read_hits_jsonl,
    write_hits_jsonl,
)

quotient_lists = st.lists(st.integers(min_value=1, max_value=8), max_size=80)


def brute_force(quots, min_n):
    hits = []
    for i in range(len(quots)):
        if (
            i + 3 < len(quots)
            and quots[i + 1] == 1
            and quots[i + 2] == 1
            and quots[i] >= min_n
            and quots[i + 3] >= min_n
        ):
            hits.append(PatternHit(i, PatternKind.ONE_ONE, quots[i], quots[i + 3]))
        if (
            i + 2 < len(quots)
            and quots[i + 1] == 2
            and quots[i] >= min_n
            and quots[i + 2] >= min_n
        ):
            hits.append(PatternHit(i, PatternKind.TWO, quots[i], quots[i + 2]))
    hits.sort(key=lambda h: (h.start_index, h.kind.value))
    return hits


@given(quotient_lists, st.integers(min_value=1, max_value=5))
def test_matches_brute_force(quots, min_n):
    assert find_patterns(quots, min_n) == brute_force(quots, min_n)


def test_simple_hits():
    hits = find_patterns([7, 1, 1, 9, 2, 6], 3)
    assert hits == [
        PatternHit(0, PatternKind.ONE_ONE, 7, 9),
        PatternHit(3, PatternKind.TWO, 9, 6),
    ]


def test_overlapping_hits_all_reported():
    # [5, 1, 1, 5, 1, 1, 5] contains two overlapping four-term hits
    hits = find_patterns([5, 1, 1, 5, 1, 1, 5], 5)
    assert [h.start_index for h in hits] == [0, 3]


def test_threshold_filters_small_outer_terms():
    assert find_patterns([2, 1, 1, 9], 3) == []
    assert find_patterns([9, 1, 1, 2], 3) == []
    assert find_patterns([9, 1, 1, 3], 3) == [PatternHit(0, PatternKind.ONE_ONE, 9, 3)]


def test_min_n_validation():
    with pytest.raises(ValueError):
        find_patterns([1, 2, 3], 0)


def test_positions_are_one_based():
    h = PatternHit(56, PatternKind.ONE_ONE, 60, 50)
    assert h.positions == [57, 58, 59, 60]
    t = PatternHit(10, PatternKind.TWO, 9, 9)
    assert t.positions == [11, 12, 13]


def test_rank_hits_ordering():
    hits = [
        PatternHit(5, PatternKind.ONE_ONE, 3, 9),
        PatternHit(0, PatternKind.ONE_ONE, 7, 8),
        PatternHit(9, PatternKind.TWO, 7, 7),
    ]
    ranked = rank_hits(hits)
    assert [h.start_index for h in ranked] == [0, 9, 5]


@given(quotient_lists)
def test_jsonl_roundtrip(quots):
    hits = find_patterns(quots, 2)
    buf = io.StringIO()
    write_hits_jsonl(hits, buf)
    buf.seek(0)
    assert list(read_hits_jsonl(buf)) == hits


def test_find_patterns_from_file(tmp_path):
    p = tmp_path / "q.tsv"
    p.write_text("0\t7\n1\t1\n2\t1\n3\t9\n")
    assert find_patterns(p, 3) == [PatternHit(0, PatternKind.ONE_ONE, 7, 9)]


def test_reference_stream_hits(theta_quotients):
    # the four record-setting hits on the reference stream, frozen
    hits = find_patterns(theta_quotients[:34000], 10)
    one_one = {h.start_index: h for h in hits if h.kind is PatternKind.ONE_ONE}
    assert one_one[56].n1 == 60 and one_one[56].n2 == 50
    assert one_one[2923].n1 == 22 and one_one[2923].n2 == 22
    assert one_one[3625].n1 == 272 and one_one[3625].n2 == 215
    assert one_one[33876].n1 == 81 and one_one[33876].n2 == 78
