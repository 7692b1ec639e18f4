import itertools

import pytest

from popstack.forbidden import (
    SegmentPattern,
    enumerate_bounded_forbidden,
    forbidden_patterns,
    group_with_wildcards,
    is_forbidden_for,
    is_forbidden_segment,
    prune_subsumed,
    track_pair,
)
from popstack.plans import (
    Segment,
    encode,
    is_bounded,
    is_sorting_plan,
    segment_of,
    semitrace_from_array,
)

from conftest import all_arrays


def seg(text, k):
    return Segment(tuple(int(t) for t in text.split(",")), k)


def contains_factor(word, factors, widths):
    for w in widths:
        for i in range(len(word) - w + 1):
            if word[i : i + w] in factors:
                return True
    return False


@pytest.fixture(scope="module")
def members():
    return {k: enumerate_bounded_forbidden(k) for k in (2, 3)}


def test_worked_segment_is_forbidden():
    assert is_forbidden_segment(seg("26,21,10,5,20,18", 5))


@pytest.mark.parametrize("text, expected", [("0,1,0", True), ("0,3,0", True), ("2,1,2", False), ("0,2,0", False)])
def test_order_two_examples(text, expected):
    assert is_forbidden_segment(seg(text, 2)) is expected


def test_order_one_rejected():
    with pytest.raises(ValueError):
        is_forbidden_segment(seg("0,1,0", 1))


def test_enumeration_order_two(members):
    texts = [",".join(map(str, s.symbols)) for s in members[2]]
    assert "0,1,0" in texts and "0,3,0" in texts
    assert "0,2,0" not in texts
    assert len(texts) == 20
    assert all(s.width <= 4 for s in members[2])
    assert enumerate_bounded_forbidden(1) == []


@pytest.mark.parametrize("k", [2, 3])
def test_enumeration_properties(members, k):
    segs = members[k]
    assert all(s.width <= 4 * k - 4 for s in segs)
    assert all(is_bounded(s) and is_forbidden_segment(s) for s in segs)
    syms = [s.symbols for s in segs]
    assert syms == sorted(set(syms))
    assert enumerate_bounded_forbidden(k) == segs


@pytest.mark.parametrize("k, max_width", [(2, 4), (3, 5)])
def test_enumeration_matches_candidate_scan(members, k, max_width):
    found = set()
    for w in range(2, max_width + 1):
        for cand in itertools.product(range(1 << k), repeat=w):
            s = Segment(cand, k)
            if is_bounded(s) and is_forbidden_segment(s):
                found.add(cand)
    expected = {s.symbols for s in members[k] if s.width <= max_width}
    assert found == expected


def test_no_member_is_a_factor_of_another_order_two(members):
    syms = {s.symbols for s in members[2]}
    for s in syms:
        for i, j in itertools.combinations(range(len(s) + 1), 2):
            if (i, j) != (0, len(s)):
                assert s[i:j] not in syms


def test_every_member_has_a_spanning_witness(members):
    # each member is minimal for at least one placement of its own
    for s in members[3]:
        assert any(
            track_pair(s, p, q) is not None and is_forbidden_for(s, p, q)
            for p, q in itertools.combinations(range(s.width - 1), 2)
        )


@pytest.mark.parametrize("k, n", [(2, 8), (3, 6)])
def test_plan_iff_no_forbidden_factor(members, k, n):
    factors = {s.symbols for s in members[k]}
    widths = sorted({len(f) for f in factors})
    for m in range(0, n + 1):
        for arr in all_arrays(k, m):
            short = all("ddd" not in row for row in arr[1:])
            clean = short and not contains_factor(encode(arr), factors, widths)
            assert is_sorting_plan(arr) == clean, arr


@pytest.mark.parametrize("k, n", [(2, 6), (3, 5)])
def test_pair_specific_lemma(k, n):
    from popstack.plans import segment_span, violating_pairs

    for m in range(2, n + 1):
        for arr in all_arrays(k, m):
            st_ = semitrace_from_array(arr)
            viol = violating_pairs(st_)
            for a, b in itertools.combinations(range(1, m + 1), 2):
                span = segment_span(st_, a, b)
                t = segment_of(st_, a, b)
                if not is_bounded(t):
                    continue
                left = span[0]
                assert is_forbidden_for(t, a - 1 - left, b - 1 - left) == ((a, b) in viol)
                if (a, b) in viol:
                    assert is_forbidden_segment(t)


def test_patterns_cover_segments():
    pats = forbidden_patterns(2)
    assert [str(p) for p in pats] == ["*0,3,*0", "0,1,0", "*0,*1,3,*0", "*0,1,1,0", "*0,3,*1,*0", "0,1,1,*0"]
    expanded = {e for p in forbidden_patterns(2, minimal=False) for e in p.expand()}
    syms = {s.symbols for s in enumerate_bounded_forbidden(2)}
    assert syms <= expanded


def test_prune_keeps_language():
    raw = forbidden_patterns(3, minimal=False)
    kept = prune_subsumed(raw)
    assert len(kept) < len(raw)
    for p in raw:
        assert any(q.subsumes(p) for q in kept)


def test_pattern_parse_and_str():
    p = SegmentPattern.parse("*0,3,*1,0", 2)
    assert str(p) == "*0,3,*1,0"
    assert p.matches((2, 3, 1, 0)) and p.matches((0, 3, 3, 0))
    assert not p.matches((1, 3, 1, 0))
    assert sorted(p.expand()) == [(0, 3, 1, 0), (0, 3, 3, 0), (2, 3, 1, 0), (2, 3, 3, 0)]
    with pytest.raises(ValueError):
        SegmentPattern.parse("*,1", 2)


def test_grouping_examples():
    pats = group_with_wildcards([seg("0,1,0", 2), seg("2,1,0", 2)])
    assert len(pats) == 1
    assert str(pats[0]) == "*0,1,0"
    single = group_with_wildcards([seg("0,3,0", 2)])
    assert single == [SegmentPattern.from_segment(seg("0,3,0", 2))]


def test_grouping_round_trip(members):
    for k in (2, 3):
        pats = group_with_wildcards(members[k])
        expanded = sorted(e for p in pats for e in p.expand())
        assert expanded == [s.symbols for s in members[k]]
        assert len(pats) < len(members[k])
