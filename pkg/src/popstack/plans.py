"""Operation arrays, their column encoding, semitraces and segments.

An operation array of order ``k`` and length ``n`` is a tuple of ``k``
operation sequences (strings over ``a``/``d``) of length ``n + 1``.  Column
``j`` is encoded as the ``k``-bit integer whose most significant bit is row 1,
with ``a = 0`` and ``d = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .permcore import (
    ASCEND,
    DESCEND,
    blockwise_reverse,
    blocks,
    is_k_sortable,
    is_operation_sequence,
    operation_word,
    passes_needed,
    pop_pass,
)

OperationArray = tuple[str, ...]


class SortabilityError(ValueError):
    """Raised when a permutation does not sort in the requested passes."""

    def __init__(self, pi, k, needed):
        super().__init__(
            f"permutation {pi} is not {k}-pop-stack-sortable; it needs {needed} passes"
        )
        self.needed = needed


def as_array(rows: Iterable[str]) -> OperationArray:
    arr = tuple(rows)
    if not arr:
        raise ValueError("an operation array needs at least one row")
    width = len(arr[0])
    for row in arr:
        if len(row) != width:
            raise ValueError("rows of an operation array must have equal length")
        if not is_operation_sequence(row):
            raise ValueError(f"invalid operation sequence: {row!r}")
    return arr


def columns_to_rows(symbols: Sequence[int], k: int) -> OperationArray:
    """Bit-unpack encoded columns into ``k`` rows (no boundary checks)."""
    rows = []
    for i in range(k):
        shift = k - 1 - i
        rows.append(
            "".join(DESCEND if (s >> shift) & 1 else ASCEND for s in symbols)
        )
    return tuple(rows)


def rows_to_columns(rows: Sequence[str]) -> tuple[int, ...]:
    k = len(rows)
    width = len(rows[0]) if rows else 0
    out = []
    for j in range(width):
        s = 0
        for i in range(k):
            s = (s << 1) | (rows[i][j] == DESCEND)
        out.append(s)
    return tuple(out)


def encode(array: Sequence[str]) -> tuple[int, ...]:
    return rows_to_columns(as_array(array))


def decode(symbols: Sequence[int], k: int) -> OperationArray:
    if k < 1:
        raise ValueError("order must be at least 1")
    if not symbols:
        raise ValueError("an encoding has at least one symbol")
    for s in symbols:
        if not 0 <= s < 1 << k:
            raise ValueError(f"symbol {s} out of range for order {k}")
    if symbols[0] != 0 or symbols[-1] != 0:
        raise ValueError("encoding must begin and end with 0 (a solid boundary)")
    return columns_to_rows(symbols, k)


def format_encoding(symbols: Iterable[int]) -> str:
    return ",".join(str(s) for s in symbols)


def parse_encoding(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)


@dataclass(frozen=True)
class Semitrace:
    """An operation array with the permutations ``alpha_1..alpha_{k+1}``.

    ``perms[-1]`` is the identity and ``perms[i] = rev(perms[i + 1], rows[i])``.
    """

    rows: OperationArray
    perms: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.rows)

    @property
    def length(self) -> int:
        return len(self.perms[0])

    def is_trace(self) -> bool:
        return all(
            operation_word(p) == mu for p, mu in zip(self.perms, self.rows)
        )

    def dump(self) -> str:
        """Plain-text picture: bars as ``|``, one row per permutation."""
        lines = []
        for mu, perm in zip(self.rows, self.perms):
            cells = []
            for j, v in enumerate(perm):
                cells.append("|" if mu[j] == ASCEND else " ")
                cells.append(str(v))
            cells.append("|")
            lines.append(" ".join(cells))
        lines.append("  " + "   ".join(str(v) for v in self.perms[-1]))
        return "\n".join(lines)


def semitrace_from_array(array: Sequence[str]) -> Semitrace:
    rows = as_array(array)
    n = len(rows[0]) - 1
    cur = tuple(range(1, n + 1))
    perms = [cur]
    for mu in reversed(rows):
        cur = blockwise_reverse(cur, mu)
        perms.append(cur)
    perms.reverse()
    return Semitrace(rows, tuple(perms))


def violating_pairs(st: Semitrace) -> set[tuple[int, int]]:
    """Pairs ``(a, b)``, ``a < b``, adjacent in some row against its bars."""
    out = set()
    for mu, perm in zip(st.rows, st.perms):
        for j in range(len(perm) - 1):
            x, y = perm[j], perm[j + 1]
            bar = mu[j + 1] == ASCEND
            if (x < y) != bar:
                out.add((min(x, y), max(x, y)))
    return out


def is_sorting_plan(array: Sequence[str]) -> bool:
    return not violating_pairs(semitrace_from_array(array))


def trace_of(pi: Sequence[int], k: int) -> Semitrace:
    pi = tuple(pi)
    if not is_k_sortable(pi, k):
        raise SortabilityError(pi, k, passes_needed(pi))
    perms = [pi]
    rows = []
    for _ in range(k):
        rows.append(operation_word(perms[-1]))
        perms.append(pop_pass(perms[-1]))
    return Semitrace(tuple(rows), tuple(perms))


@dataclass(frozen=True)
class Segment:
    """A contiguous run of encoded columns of order ``k``."""

    symbols: tuple[int, ...]
    k: int

    def __post_init__(self):
        for s in self.symbols:
            if not 0 <= s < 1 << self.k:
                raise ValueError(f"symbol {s} out of range for order {self.k}")

    @property
    def width(self) -> int:
        return len(self.symbols)

    @cached_property
    def rows(self) -> OperationArray:
        return columns_to_rows(self.symbols, self.k)

    def __str__(self):
        return format_encoding(self.symbols)


def _block_span(mu: str, position: int) -> tuple[int, int]:
    """Bar columns ``(left, right)`` enclosing the cell at ``position``."""
    if not 0 <= position < len(mu) - 1:
        raise IndexError(position)
    return mu.rfind(ASCEND, 0, position + 1), mu.find(ASCEND, position + 1)


def segment_span(st: Semitrace, a: int, b: int) -> tuple[int, int] | None:
    """First and last encoded column of ``T_{a,b}``; None for order 1."""
    if a == b:
        raise ValueError("a and b must be distinct")
    n = st.length
    for v in (a, b):
        if not 1 <= v <= n:
            raise ValueError(f"value {v} out of range 1..{n}")
    spans = []
    for mu, perm in zip(st.rows[1:], st.perms[1:]):
        for v in (a, b):
            spans.append(_block_span(mu, perm.index(v)))
    if not spans:
        return None
    return min(s for s, _ in spans), max(t for _, t in spans)


def segment_of(st: Semitrace, a: int, b: int) -> Segment:
    """The smallest segment covering every block of rows ``2..k`` holding ``a`` or ``b``."""
    span = segment_span(st, a, b)
    if span is None:
        return Segment((), st.order)
    left, right = span
    return Segment(rows_to_columns([mu[left : right + 1] for mu in st.rows]), st.order)


def is_bounded(seg: Segment) -> bool:
    """No three consecutive ``d`` letters on rows ``2..k`` of the segment."""
    return all(DESCEND * 3 not in row for row in seg.rows[1:])
