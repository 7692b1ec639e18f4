import itertools
import math

import pytest
from hypothesis import given, strategies as st

from popstack.permcore import (
    as_permutation,
    blockwise_reverse,
    is_identity,
    is_k_sortable,
    is_layered,
    operation_word,
    passes_needed,
    pop_pass,
)


def stack_pass(pi):
    """Literal pop-stack: pop everything before pushing a larger element."""
    stack, out, ops = [], [], []
    for v in pi:
        if not stack or stack[-1] < v:
            ops.append("a")
            while stack:
                out.append(stack.pop())
        else:
            ops.append("d")
        stack.append(v)
    ops.append("a")
    while stack:
        out.append(stack.pop())
    return tuple(out), "".join(ops)


def perms(n):
    return itertools.permutations(range(1, n + 1))


def test_pop_pass_worked_example():
    pi = as_permutation("752491863")
    assert pop_pass(pi) == as_permutation("257419368")
    assert operation_word(pi) == "addaadadda"


@pytest.mark.parametrize(
    "pi, expected",
    [("123", "123"), ("231", "213"), ("21", "12"), ("1", "1")],
)
def test_pop_pass_small(pi, expected):
    assert pop_pass(as_permutation(pi)) == as_permutation(expected)


def test_operation_word_small():
    assert operation_word((1,)) == "aa"
    assert operation_word((2, 1)) == "ada"
    assert operation_word(()) == "a"


def test_blockwise_reverse_examples():
    assert blockwise_reverse(tuple(range(1, 10)), "adaddadada") == as_permutation("215437698")
    assert blockwise_reverse((3, 1, 2), "aaaa") == (3, 1, 2)
    assert blockwise_reverse((1, 2, 3, 4), "addda") == (4, 3, 2, 1)


def test_blockwise_reverse_rejects_length_mismatch():
    with pytest.raises(ValueError):
        blockwise_reverse((1, 2, 3), "ada")


def test_blockwise_reverse_rejects_bad_sequence():
    with pytest.raises(ValueError):
        blockwise_reverse((1, 2), "dda")


@given(st.permutations(list(range(1, 9))), st.lists(st.sampled_from("ad"), min_size=7, max_size=7))
def test_blockwise_reverse_is_an_involution(pi, inner):
    mu = "a" + "".join(inner) + "a"
    assert blockwise_reverse(blockwise_reverse(pi, mu), mu) == tuple(pi)


@pytest.mark.parametrize("n", range(0, 9))
def test_pop_pass_matches_stack_and_reversal(n):
    for pi in perms(n):
        out, ops = stack_pass(pi)
        assert pop_pass(pi) == out
        assert operation_word(pi) == ops
        assert pop_pass(pi) == blockwise_reverse(pi, operation_word(pi))


@pytest.mark.parametrize("n", range(0, 9))
def test_layered_iff_one_pass(n):
    for pi in perms(n):
        assert is_layered(pi) == is_k_sortable(pi, 1)


def test_layered_examples():
    assert is_layered(as_permutation("321465"))
    assert not is_layered(as_permutation("231"))
    assert is_layered(())


def test_k_sortable_examples():
    pi = as_permutation("752491863")
    assert is_k_sortable(pi, 4)
    assert not is_k_sortable(pi, 3)
    assert passes_needed(pi) == 4
    assert is_k_sortable((1, 2, 3), 0)
    assert not is_k_sortable((2, 1), 0)
    with pytest.raises(ValueError):
        is_k_sortable((1,), -1)


@pytest.mark.parametrize("n", range(1, 9))
def test_fixed_points_and_worst_case(n):
    for pi in perms(n):
        assert (pop_pass(pi) == pi) == is_identity(pi)
        assert is_k_sortable(pi, n - 1)
        needed = passes_needed(pi)
        assert not is_k_sortable(pi, needed - 1) if needed else True
        assert is_k_sortable(pi, needed + 1)


def test_one_pass_count_small():
    for n in range(1, 8):
        assert sum(is_k_sortable(p, 1) for p in perms(n)) == 2 ** (n - 1)
    assert sum(is_k_sortable(p, 6) for p in perms(7)) == math.factorial(7)


def test_as_permutation_validates():
    with pytest.raises(ValueError):
        as_permutation([1, 1, 2])
