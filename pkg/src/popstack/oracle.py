"""Brute-force ground truth: sort every permutation, test every operation array."""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache

from .permcore import passes_needed
from .plans import decode, is_sorting_plan

DEFAULT_MAX_N = 9
DEFAULT_MAX_ARRAYS = 1 << 20


class CapExceeded(ValueError):
    """A brute-force request is larger than the configured cap."""


@lru_cache(maxsize=None)
def pass_distribution(n: int, max_n: int = DEFAULT_MAX_N) -> tuple[int, ...]:
    """``out[j]`` = number of permutations of ``[n]`` needing exactly ``j`` passes."""
    if n > max_n:
        raise CapExceeded(
            f"n={n} exceeds the brute-force cap of {max_n} ({n}! permutations); "
            "raise max_n explicitly if you really want this"
        )
    hist = Counter(passes_needed(p) for p in itertools.permutations(range(1, n + 1)))
    top = max(hist) if hist else 0
    return tuple(hist.get(j, 0) for j in range(top + 1))


def count_sortable_bruteforce(k: int, n: int, max_n: int = DEFAULT_MAX_N) -> int:
    if k < 0 or n < 0:
        raise ValueError("k and n must be non-negative")
    return sum(pass_distribution(n, max_n)[: k + 1])


def count_table(k: int, n_max: int, max_n: int = DEFAULT_MAX_N) -> list[int]:
    """``p_0 .. p_{n_max}`` for ``k`` passes."""
    return [count_sortable_bruteforce(k, n, max_n) for n in range(n_max + 1)]


def plans_bruteforce(
    k: int, n: int, max_arrays: int = DEFAULT_MAX_ARRAYS
) -> list[tuple[int, ...]]:
    """Every boundary-0 encoding of length ``n + 1`` that is a sorting plan, sorted."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    if n == 0:
        return [(0,)]
    total = (1 << k) ** (n - 1)
    if total > max_arrays:
        raise CapExceeded(
            f"{total} operation arrays for k={k}, n={n} exceed the cap of {max_arrays}"
        )
    out = []
    for inner in itertools.product(range(1 << k), repeat=n - 1):
        symbols = (0,) + inner + (0,)
        if is_sorting_plan(decode(symbols, k)):
            out.append(symbols)
    return out
