import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from popstack.automata import (
    Dfa,
    Nfa,
    PartialDfa,
    StateBudgetExceeded,
    avoid_patterns,
    base_dfa,
    build_all,
    build_empty,
    build_factor_nfa,
    build_R,
    build_sorting_plan_dfa,
    build_W,
    canonical,
    complement,
    count_words,
    determinize,
    equivalent,
    from_text,
    hopcroft_minimize,
    intersect,
    intersect_all,
    minimize,
    to_dot,
    to_text,
    trim,
)
from popstack.forbidden import SegmentPattern, forbidden_patterns
from popstack.permcore import is_k_sortable
from popstack.plans import Segment, decode, encode, is_sorting_plan, trace_of


def words(sigma, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(range(sigma), repeat=n)


@st.composite
def dfas(draw, k=None):
    k = draw(st.sampled_from([1, 2])) if k is None else k
    n = draw(st.integers(1, 5))
    sigma = 1 << k
    trans = draw(st.lists(st.integers(0, n - 1), min_size=n * sigma, max_size=n * sigma))
    acc = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return Dfa(np.array(trans).reshape(n, sigma), np.array(acc), 0, k)


@st.composite
def nfas(draw):
    n = draw(st.integers(1, 4))
    sigma = 2
    delta = {}
    for p in range(n):
        for s in range(sigma):
            targets = draw(st.sets(st.integers(0, n - 1), max_size=n))
            if targets:
                delta[p, s] = frozenset(targets)
    init = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n))
    acc = draw(st.sets(st.integers(0, n - 1), max_size=n))
    return Nfa(sigma, n, frozenset(init), frozenset(acc), delta)


def test_w_automaton():
    w = build_W(2)
    assert w.num_states == 4 and w.num_transitions == 16
    assert w.accepts([0]) and w.accepts([0, 3, 1, 0]) and w.accepts([0, 0])
    assert not w.accepts([]) and not w.accepts([1, 0]) and not w.accepts([0, 2])
    m = minimize(w)
    assert m.num_states == 4
    t = trim(m)
    assert t.num_states == 3


def test_r_automaton():
    r = build_R(3, 2)
    assert r.accepts([2, 2, 0, 2, 2]) and not r.accepts([2, 3, 6])
    assert r.accepts([1, 1, 1, 1])
    for bad in (1, 4):
        with pytest.raises(ValueError):
            build_R(3, bad)


def test_factor_nfa():
    seg = Segment((0, 1, 0), 2)
    nfa = build_factor_nfa(seg)
    assert nfa.num_states == 4
    assert nfa.accepts([3, 0, 1, 0, 2])
    assert not nfa.accepts([0, 1, 1, 0])
    pat = SegmentPattern.parse("*0,1,0", 2)
    nfa = build_factor_nfa(pat)
    assert nfa.accepts([2, 1, 0]) and nfa.accepts([1, 0, 1, 0])
    d = determinize(nfa)
    for w in words(4, 5):
        assert d.accepts(w) == nfa.accepts(w)


def test_trivial_automata():
    assert count_words(build_all(2), 3) == 64
    assert count_words(build_empty(2), 3) == 0
    assert trim(build_empty(1)).initial is None


def test_complement_needs_complete():
    with pytest.raises(TypeError):
        complement(trim(build_W(1)))


def test_intersect_alphabet_mismatch():
    with pytest.raises(ValueError):
        intersect(build_W(1), build_W(2))


@settings(max_examples=60, deadline=None)
@given(nfas())
def test_determinize_agrees(nfa):
    d = determinize(nfa)
    for w in words(2, 6):
        assert d.accepts(w) == nfa.accepts(w)


@settings(max_examples=60, deadline=None)
@given(dfas(k=1), dfas(k=1))
def test_boolean_ops_agree(a, b):
    c = complement(a)
    p = intersect(a, b)
    m = minimize(p)
    t = trim(p)
    assert m.num_states <= p.num_states
    for w in words(2, 6):
        assert c.accepts(w) != a.accepts(w)
        both = a.accepts(w) and b.accepts(w)
        assert p.accepts(w) == m.accepts(w) == t.accepts(w) == both
    for n in range(9):
        assert count_words(m, n) == count_words(p, n) == count_words(t, n)


@settings(max_examples=80, deadline=None)
@given(dfas())
def test_minimize_matches_hopcroft(d):
    m = minimize(d)
    h = hopcroft_minimize(d)
    assert m.same_structure(h)
    assert minimize(m).same_structure(m)
    assert equivalent(d, canonical(d))
    for w in words(d.alphabet_size, 4):
        assert m.accepts(w) == d.accepts(w)


def test_count_words_matches_enumeration():
    d = base_dfa(2)
    for n in range(6):
        assert count_words(d, n) == sum(d.accepts(w) for w in itertools.product(range(4), repeat=n))


def test_intersect_all_is_order_independent():
    parts = [build_W(3), build_R(3, 2), build_R(3, 3)]
    first = intersect_all(parts)
    assert intersect_all(parts[::-1]).same_structure(first)
    with pytest.raises(ValueError):
        intersect_all([])


def test_avoid_patterns_matches_factor_construction():
    pats = forbidden_patterns(2)
    base = base_dfa(2)
    fused = minimize(avoid_patterns(pats, base))
    slow = intersect_all([base] + [complement(determinize(build_factor_nfa(p))) for p in pats])
    assert fused.same_structure(slow)


def test_sorting_plan_dfa_small():
    d1 = build_sorting_plan_dfa(1)
    assert (d1.num_states, d1.num_transitions) == (4, 8)
    d2 = build_sorting_plan_dfa(2)
    assert trim(d2).num_states == 5
    assert trim(d2).num_transitions == 11
    assert trim(build_sorting_plan_dfa(3)).num_states == 12


def test_strategies_agree():
    ref = build_sorting_plan_dfa(3)
    pats = forbidden_patterns(3, minimal=False)
    shuffled = pats[:]
    random.Random(7).shuffle(shuffled)
    assert build_sorting_plan_dfa(3, patterns=shuffled, group_size=37).same_structure(ref)
    assert build_sorting_plan_dfa(3, strategy="tree", group_size=50).same_structure(ref)
    assert build_sorting_plan_dfa(3, patterns=forbidden_patterns(3)).same_structure(ref)
    assert build_sorting_plan_dfa(2, strategy="tree", workers=2, group_size=2).same_structure(build_sorting_plan_dfa(2))
    with pytest.raises(ValueError):
        build_sorting_plan_dfa(3, strategy="other")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_language_is_sorting_plans(plan_dfas, k):
    d = plan_dfas(k)
    sigma = 1 << k
    for n in range(0, 7):
        for inner in itertools.product(range(sigma), repeat=n):
            word = (0,) + inner + (0,)
            assert d.accepts(word) == is_sorting_plan(decode(word, k))
    assert not d.accepts(()) and not d.accepts((1,))


def test_language_is_traces_order_two(plan_dfas):
    d = plan_dfas(2)
    for n in range(0, 7):
        plans = set()
        for pi in itertools.permutations(range(1, n + 1)):
            if is_k_sortable(pi, 2):
                plans.add(encode(trace_of(pi, 2).rows))
        accepted = {
            (0,) + w + (0,)
            for w in itertools.product(range(4), repeat=n - 1)
            if d.accepts((0,) + w + (0,))
        } if n else {(0,)}
        assert accepted == plans


def test_budget_exceeded(monkeypatch):
    with pytest.raises(StateBudgetExceeded):
        build_sorting_plan_dfa(3, budget=5)
    monkeypatch.setenv("POPSTACK_STATE_BUDGET", "3")
    with pytest.raises(StateBudgetExceeded):
        build_sorting_plan_dfa(2)


def test_text_round_trip(plan_dfas):
    d = plan_dfas(2)
    text = to_text(d)
    assert text.splitlines()[0] == "dfa k=2 alphabet=4 states=6 initial=0"
    back = from_text(text)
    assert isinstance(back, Dfa) and back.same_structure(d)
    t = trim(d)
    back = from_text(to_text(t))
    assert isinstance(back, PartialDfa)
    assert back.edges == tuple(sorted(t.edges)) and back.accepting == t.accepting
    assert to_text(d) == to_text(build_sorting_plan_dfa(2))


def test_dot_output():
    dot = to_dot(trim(build_W(2)))
    assert dot.startswith("digraph S {")
    assert '[label="1-3"]' in dot
    assert "doublecircle" in dot


def test_dfa_arrays_are_frozen():
    d = build_W(1)
    with pytest.raises(ValueError):
        d.trans[0, 0] = 2
