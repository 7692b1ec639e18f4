"""Forbidden segments: deciding them and enumerating the bounded ones.

Two values ``a < b`` start next to nothing in particular in the identity row
at the bottom of a segment.  Walking up, the block holding each of them in
rows ``k..2`` fixes its position in the row above.  The segment is forbidden
when some such placement, whose blocks exactly span the segment and share a
block somewhere, witnesses a broken ascent/bar rule on rows ``2..k`` or one
of the two row-1 boundary configurations.

Enumeration works placement-first: every placement fixes only the bars of the
blocks it passes through (plus a few row-1 bars), so it naturally yields a
:class:`SegmentPattern` with wildcards everywhere else.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .permcore import ASCEND, DESCEND
from .plans import Segment, is_bounded


@dataclass(frozen=True, order=True)
class SegmentPattern:
    """Columns given as ``(mask, value)``: a symbol ``s`` matches iff ``s & mask == value``."""

    k: int
    columns: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return len(self.columns)

    @property
    def full(self) -> int:
        return (1 << self.k) - 1

    def matches(self, symbols: Sequence[int]) -> bool:
        return len(symbols) == self.width and all(
            s & m == v for s, (m, v) in zip(symbols, self.columns)
        )

    def column_symbols(self, j: int) -> list[int]:
        m, v = self.columns[j]
        return [s for s in range(1 << self.k) if s & m == v]

    def expand(self) -> Iterator[tuple[int, ...]]:
        choices = [self.column_symbols(j) for j in range(self.width)]
        return itertools.product(*choices)

    def wildcards(self) -> int:
        return sum(bin(self.full & ~m).count("1") for m, _ in self.columns)

    def subsumes(self, other: "SegmentPattern") -> bool:
        """True iff every expansion of ``other`` contains an expansion of ``self``."""
        if other.k != self.k or other.width < self.width:
            return False
        for off in range(other.width - self.width + 1):
            for (pm, pv), (qm, qv) in zip(self.columns, other.columns[off:]):
                if pm & ~qm or (pv ^ qv) & pm:
                    break
            else:
                return True
        return False

    def __str__(self):
        out = []
        for m, v in self.columns:
            if m == self.full:
                out.append(str(v))
            else:
                bits = []
                for shift in range(self.k - 1, -1, -1):
                    if not (m >> shift) & 1:
                        bits.append("*")
                    else:
                        bits.append(str((v >> shift) & 1))
                out.append("".join(bits))
        return ",".join(out)

    @classmethod
    def from_segment(cls, seg: Segment) -> "SegmentPattern":
        full = (1 << seg.k) - 1
        return cls(seg.k, tuple((full, s) for s in seg.symbols))

    @classmethod
    def parse(cls, text: str, k: int) -> "SegmentPattern":
        full = (1 << k) - 1
        cols = []
        for tok in text.split(","):
            if "*" in tok:
                if len(tok) != k:
                    raise ValueError(f"wildcard column {tok!r} needs {k} characters")
                m = v = 0
                for ch in tok:
                    m, v = m << 1, v << 1
                    if ch != "*":
                        m |= 1
                        v |= int(ch)
                cols.append((m, v))
            else:
                cols.append((full, int(tok)))
        return cls(k, tuple(cols))


def _locate_block(row: str, cell: int) -> tuple[int, int] | None:
    """Bar columns enclosing ``cell`` in ``row``, or None if not closed inside it."""
    left = cell
    while left >= 0 and row[left] != ASCEND:
        left -= 1
    right = cell + 1
    while right < len(row) and row[right] != ASCEND:
        right += 1
    if left < 0 or right >= len(row):
        return None
    return left, right


def _violates(pa: int, pb: int, same_block: bool) -> bool:
    # a < b by convention; adjacent cells in the same block are not separated
    if abs(pa - pb) != 1:
        return False
    ascent = pa < pb
    return ascent == same_block


def _row1_forbids(row1: str, pa: int, pb: int) -> bool:
    if pb > pa:
        return False
    if pa - pb == 1 and row1[pa] == DESCEND:
        return True
    i, j = pb, pa
    return (
        row1[i] == ASCEND
        and row1[j + 1] == ASCEND
        and row1[i + 1 : j + 1].count(ASCEND) == 1
    )


def track_pair(seg: Segment, p: int, q: int) -> tuple[int, int, bool] | None:
    """Follow bottom cells ``p < q`` up through rows ``k..2`` of ``seg``.

    Returns the pair's cells in row 2 and whether rows ``2..k`` already break
    the ascent/bar rule, or None unless the placement is admissible: every
    visited block closes inside the segment, the blocks span it exactly, and
    some block holds both values.
    """
    rows = seg.rows
    w = seg.width
    pa, pb = p, q
    lo, hi = w, -1
    shared = bad = False
    for i in range(seg.k - 1, 0, -1):
        row = rows[i]
        ba = _locate_block(row, pa)
        bb = _locate_block(row, pb)
        if ba is None or bb is None:
            return None
        same = ba == bb
        shared = shared or same
        lo = min(lo, ba[0], bb[0])
        hi = max(hi, ba[1], bb[1])
        pa = ba[0] + ba[1] - 1 - pa
        pb = bb[0] + bb[1] - 1 - pb
        if _violates(pa, pb, same):
            bad = True
    if not shared or lo != 0 or hi != w - 1:
        return None
    return pa, pb, bad


def is_forbidden_for(seg: Segment, p: int, q: int) -> bool:
    """Forbidden with respect to the values sitting at bottom cells ``p < q``."""
    if seg.k < 2:
        raise ValueError("forbidden segments are defined for order k >= 2")
    tracked = track_pair(seg, p, q)
    if tracked is None:
        return False
    pa, pb, bad = tracked
    return bad or _row1_forbids(seg.rows[0], pa, pb)


def is_forbidden_segment(seg: Segment) -> bool:
    """True iff some placement of a pair inside ``seg`` witnesses a violation."""
    if seg.k < 2:
        raise ValueError("forbidden segments are defined for order k >= 2")
    return any(
        is_forbidden_for(seg, p, q)
        for p, q in itertools.combinations(range(seg.width - 1), 2)
    )


def _block_choices(pos: int) -> Iterator[tuple[int, int]]:
    """Cells ``[s, e]`` of every block of size 1..3 that contains ``pos``."""
    for size in (1, 2, 3):
        for s in range(pos - size + 1, pos + 1):
            yield s, s + size - 1


def _placements(k: int) -> Iterator[tuple[dict, int, int, bool]]:
    """Yield ``(fixed_bars, pa, pb, violated)`` for every sharing placement.

    ``fixed_bars`` maps ``(row, column)`` to a letter for rows ``2..k`` (0-based
    row indices 1..k-1); ``pa``, ``pb`` are the positions in row 2.
    """

    def rec(i, pa, pb, fixed, shared, violated):
        if i == 0:
            if shared:
                yield fixed, pa, pb, violated
            return
        # both must still be able to meet in one block by row 2
        if not shared and abs(pa - pb) > 2 + 4 * (i - 1):
            return
        for sa, ea in _block_choices(pa):
            if sa <= pb <= ea:
                options = [((sa, ea), (sa, ea))]
            else:
                options = [
                    ((sa, ea), (sb, eb))
                    for sb, eb in _block_choices(pb)
                    if eb < sa or sb > ea
                ]
            for ba, bb in options:
                bars = dict(fixed)
                clash = False
                for s, e in {ba, bb}:
                    for col, letter in [(s, ASCEND), (e + 1, ASCEND)] + [
                        (c, DESCEND) for c in range(s + 1, e + 1)
                    ]:
                        key = (i, col)
                        if bars.setdefault(key, letter) != letter:
                            clash = True
                if clash:
                    continue
                same = ba == bb
                na = ba[0] + ba[1] - pa
                nb = bb[0] + bb[1] - pb
                yield from rec(
                    i - 1, na, nb, bars, shared or same,
                    violated or _violates(na, nb, same),
                )

    top = 2 + 4 * (k - 2)
    for gap in range(1, top + 1):
        yield from rec(k - 1, 0, gap, {}, False, False)


def _to_pattern(k: int, fixed: dict) -> SegmentPattern:
    cols = [c for _, c in fixed]
    lo, hi = min(cols), max(cols)
    masks = [0] * (hi - lo + 1)
    values = [0] * (hi - lo + 1)
    for (row, col), letter in fixed.items():
        bit = 1 << (k - 1 - row)
        masks[col - lo] |= bit
        if letter == DESCEND:
            values[col - lo] |= bit
    return SegmentPattern(k, tuple(zip(masks, values)))


def forbidden_patterns(k: int, minimal: bool = True) -> list[SegmentPattern]:
    """Wildcard patterns whose expansions are exactly the forbidden segments.

    Every unbounded expansion is also forbidden; it is harmless for automata
    built together with the block-size constraint.  With ``minimal=True``
    patterns subsumed by another pattern are dropped, which keeps the factor
    language unchanged.
    """
    if k < 2:
        return []
    found = set()
    for fixed, pa, pb, violated in _placements(k):
        if violated:
            found.add(_to_pattern(k, fixed))
            continue
        if pb > pa:
            continue
        # row 1 (index 0) bars around the pair's position in row 2
        if pa - pb == 1:
            extra = dict(fixed)
            extra[(0, pa)] = DESCEND
            found.add(_to_pattern(k, extra))
        i, j = pb, pa
        for t in range(i + 1, j + 1):
            extra = dict(fixed)
            extra[(0, i)] = ASCEND
            extra[(0, j + 1)] = ASCEND
            for c in range(i + 1, j + 1):
                extra[(0, c)] = ASCEND if c == t else DESCEND
            found.add(_to_pattern(k, extra))
    patterns = sorted(found, key=lambda p: (p.width, p.columns))
    if minimal:
        patterns = prune_subsumed(patterns)
    return patterns


def prune_subsumed(patterns: Iterable[SegmentPattern]) -> list[SegmentPattern]:
    """Drop patterns whose every occurrence already contains a kept pattern."""
    ordered = sorted(set(patterns), key=lambda p: (p.width, -p.wildcards(), p.columns))
    if not ordered:
        return []
    cap = len(ordered)
    # per kept width: preallocated mask/value tables and a fill count
    tables: dict[int, list] = {}
    kept: list[SegmentPattern] = []
    for p in ordered:
        pm = np.array([m for m, _ in p.columns], dtype=np.int64)
        pv = np.array([v for _, v in p.columns], dtype=np.int64)
        covered = False
        for w, (masks, values, count) in tables.items():
            if not count or w > p.width:
                continue
            km, kv = masks[:count], values[:count]
            for off in range(p.width - w + 1):
                qm, qv = pm[off : off + w], pv[off : off + w]
                hit = ((km & ~qm) == 0) & (((kv ^ qv) & km) == 0)
                if hit.all(axis=1).any():
                    covered = True
                    break
            if covered:
                break
        if covered:
            continue
        kept.append(p)
        entry = tables.setdefault(
            p.width,
            [np.zeros((cap, p.width), np.int64), np.zeros((cap, p.width), np.int64), 0],
        )
        entry[0][entry[2]] = pm
        entry[1][entry[2]] = pv
        entry[2] += 1
    return sorted(kept, key=lambda p: (p.width, p.columns))


def enumerate_bounded_forbidden(k: int) -> list[Segment]:
    """All bounded forbidden segments of order ``k``, sorted by encoding."""
    if k < 2:
        return []
    out = set()
    for pat in forbidden_patterns(k, minimal=False):
        for symbols in pat.expand():
            seg = Segment(symbols, k)
            if is_bounded(seg):
                out.add(symbols)
    return [Segment(s, k) for s in sorted(out)]


def group_with_wildcards(segs: Iterable[Segment]) -> list[SegmentPattern]:
    """Greedily merge segments differing in a single bit into wildcard patterns.

    The expansions of the result are exactly the input segments.
    """
    segs = list(segs)
    if not segs:
        return []
    k = segs[0].k
    current = {SegmentPattern.from_segment(s) for s in segs}
    for bit in range(k):
        flag = 1 << bit
        for col in range(max(p.width for p in current)):
            merged = set()
            used = set()
            index = {p: None for p in current}
            for p in sorted(current):
                if p in used or col >= p.width:
                    continue
                m, v = p.columns[col]
                if not m & flag or v & flag:
                    continue
                twin_cols = list(p.columns)
                twin_cols[col] = (m, v | flag)
                twin = SegmentPattern(k, tuple(twin_cols))
                if twin in index and twin not in used:
                    cols = list(p.columns)
                    cols[col] = (m & ~flag, v)
                    merged.add(SegmentPattern(k, tuple(cols)))
                    used.update((p, twin))
            if used:
                current = (current - used) | merged
    return sorted(current, key=lambda p: (p.width, p.columns))
