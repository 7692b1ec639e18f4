"""Permutations and a single pass of pop-stack sorting.

Permutations are plain tuples of the values ``1..n``.  Operation sequences
are strings over ``{"a", "d"}`` of length ``n + 1``: ``a`` marks a pop (a bar
in a trace picture), ``d`` marks a push without a pop.
"""

from __future__ import annotations

from typing import Iterable, Sequence

ASCEND = "a"
DESCEND = "d"


def as_permutation(values: Iterable[int] | str) -> tuple[int, ...]:
    """Coerce ``values`` to a permutation tuple, validating it.

    A string is read one digit per entry, so ``"752491863"`` works for
    ``n <= 9``.
    """
    if isinstance(values, str):
        values = [int(c) for c in values]
    perm = tuple(int(v) for v in values)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError(f"not a permutation of 1..{len(perm)}: {perm}")
    return perm


def is_operation_sequence(mu: str) -> bool:
    return (
        len(mu) >= 1
        and mu[0] == ASCEND
        and mu[-1] == ASCEND
        and set(mu) <= {ASCEND, DESCEND}
    )


def operation_word(pi: Sequence[int]) -> str:
    """Ascent/descent word of ``-inf, pi, +inf``."""
    inner = "".join(
        ASCEND if pi[i] < pi[i + 1] else DESCEND for i in range(len(pi) - 1)
    )
    if not pi:
        return ASCEND
    return ASCEND + inner + ASCEND


def blocks(mu: str) -> list[tuple[int, int]]:
    """Half-open index ranges ``[start, stop)`` of the blocks of ``mu``."""
    bars = [i for i, c in enumerate(mu) if c == ASCEND]
    return list(zip(bars, bars[1:]))


def blockwise_reverse(pi: Sequence[int], mu: str) -> tuple[int, ...]:
    """Reverse ``pi`` inside each block delimited by the bars of ``mu``.

    The operation is an involution for a fixed ``mu``.
    """
    if len(mu) != len(pi) + 1:
        raise ValueError(
            f"operation sequence has length {len(mu)}, expected {len(pi) + 1}"
        )
    if not is_operation_sequence(mu):
        raise ValueError(f"invalid operation sequence: {mu!r}")
    out: list[int] = []
    for start, stop in blocks(mu):
        out.extend(reversed(pi[start:stop]))
    return tuple(out)


def pop_pass(pi: Sequence[int]) -> tuple[int, ...]:
    """One pass through a pop-stack: every descending run gets reversed."""
    out: list[int] = []
    run: list[int] = []
    for v in pi:
        if run and run[-1] < v:
            out.extend(reversed(run))
            run = []
        run.append(v)
    out.extend(reversed(run))
    return tuple(out)


def is_identity(pi: Sequence[int]) -> bool:
    return all(v == i for i, v in enumerate(pi, 1))


def passes_needed(pi: Sequence[int]) -> int:
    """Number of pop-stack passes after which ``pi`` becomes the identity."""
    count = 0
    cur = tuple(pi)
    while not is_identity(cur):
        cur = pop_pass(cur)
        count += 1
    return count


def is_k_sortable(pi: Sequence[int], k: int) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    cur = tuple(pi)
    for _ in range(k):
        if is_identity(cur):
            return True
        cur = pop_pass(cur)
    return is_identity(cur)


def is_layered(pi: Sequence[int]) -> bool:
    """True iff ``pi`` is a direct sum of decreasing permutations."""
    i, n = 0, len(pi)
    low = 0
    while i < n:
        top = pi[i]
        j = i
        while j + 1 < n and pi[j + 1] == pi[j] - 1:
            j += 1
        # the layer pi[i..j] must be exactly low+1..top, decreasing
        if pi[j] != low + 1:
            return False
        low = top
        i = j + 1
    return True
