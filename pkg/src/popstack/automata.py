"""Finite automata over the column alphabet ``{0, ..., 2**k - 1}``.

Deterministic automata are always complete and stored as a dense
``(states, alphabet)`` transition table, which keeps products and
minimization vectorizable even when intermediate automata get large.
"""

from __future__ import annotations

import logging
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .forbidden import SegmentPattern, forbidden_patterns
from .plans import Segment

log = logging.getLogger(__name__)

DEFAULT_STATE_BUDGET = 5_000_000


class StateBudgetExceeded(RuntimeError):
    """An intermediate automaton grew past the configured state budget."""


def state_budget() -> int:
    return int(os.environ.get("POPSTACK_STATE_BUDGET", DEFAULT_STATE_BUDGET))


def _check_budget(n: int, budget: int | None):
    budget = state_budget() if budget is None else budget
    if n > budget:
        raise StateBudgetExceeded(
            f"intermediate automaton has {n} states, over the budget of {budget} "
            "(set POPSTACK_STATE_BUDGET to raise it)"
        )


@dataclass(frozen=True, eq=False)
class Dfa:
    """Complete deterministic automaton.

    ``trans[q, s]`` is the successor of state ``q`` on symbol ``s``.
    """

    trans: np.ndarray
    accepting: np.ndarray
    initial: int = 0
    k: int | None = None

    def __post_init__(self):
        trans = np.ascontiguousarray(self.trans, dtype=np.int64)
        acc = np.asarray(self.accepting, dtype=bool)
        if trans.ndim != 2 or acc.shape != (trans.shape[0],):
            raise ValueError("transition table and accepting vector disagree")
        if trans.size and (trans.min() < 0 or trans.max() >= trans.shape[0]):
            raise ValueError("transition to a missing state")
        if not 0 <= self.initial < max(trans.shape[0], 1):
            raise ValueError("initial state out of range")
        trans.setflags(write=False)
        acc.setflags(write=False)
        object.__setattr__(self, "trans", trans)
        object.__setattr__(self, "accepting", acc)

    @property
    def num_states(self) -> int:
        return self.trans.shape[0]

    @property
    def alphabet_size(self) -> int:
        return self.trans.shape[1]

    @property
    def num_transitions(self) -> int:
        return self.trans.size

    def run(self, word: Iterable[int]) -> int:
        q = self.initial
        for s in word:
            q = int(self.trans[q, s])
        return q

    def accepts(self, word: Iterable[int]) -> bool:
        return bool(self.accepting[self.run(word)])

    def same_structure(self, other: "Dfa") -> bool:
        return (
            self.initial == other.initial
            and np.array_equal(self.trans, other.trans)
            and np.array_equal(self.accepting, other.accepting)
        )

    def dead_states(self) -> np.ndarray:
        """Boolean mask of states from which no accepting state is reachable."""
        return ~_coreachable(self.trans, self.accepting)


@dataclass(frozen=True, eq=False)
class PartialDfa:
    """A trimmed automaton: missing transitions go nowhere."""

    edges: tuple[tuple[int, int, int], ...]
    accepting: frozenset[int]
    num_states: int
    initial: int | None
    alphabet_size: int
    k: int | None = None

    @property
    def num_transitions(self) -> int:
        return len(self.edges)

    @property
    def num_arcs(self) -> int:
        """Edges counted once per ordered pair of states."""
        return len({(p, q) for p, _, q in self.edges})

    def accepts(self, word: Iterable[int]) -> bool:
        if self.initial is None:
            return False
        table = {(p, s): q for p, s, q in self.edges}
        q = self.initial
        for s in word:
            if (q, s) not in table:
                return False
            q = table[q, s]
        return q in self.accepting


@dataclass
class Nfa:
    """Nondeterministic automaton without epsilon moves."""

    alphabet_size: int
    num_states: int
    initial: frozenset[int]
    accepting: frozenset[int]
    delta: dict[tuple[int, int], frozenset[int]] = field(default_factory=dict)

    def __post_init__(self):
        for (p, s), targets in self.delta.items():
            if not 0 <= s < self.alphabet_size:
                raise ValueError(f"symbol {s} outside the alphabet")
            if not 0 <= p < self.num_states or any(
                not 0 <= q < self.num_states for q in targets
            ):
                raise ValueError("transition references a missing state")

    def step(self, states: Iterable[int], s: int) -> frozenset[int]:
        out = set()
        for p in states:
            out |= self.delta.get((p, s), frozenset())
        return frozenset(out)

    def accepts(self, word: Iterable[int]) -> bool:
        cur = self.initial
        for s in word:
            cur = self.step(cur, s)
        return bool(cur & self.accepting)

    @classmethod
    def from_dfa(cls, d: Dfa) -> "Nfa":
        delta = {
            (p, s): frozenset([int(d.trans[p, s])])
            for p in range(d.num_states)
            for s in range(d.alphabet_size)
        }
        acc = frozenset(int(q) for q in np.flatnonzero(d.accepting))
        return cls(d.alphabet_size, d.num_states, frozenset([d.initial]), acc, delta)


# --- builders ---------------------------------------------------------------


def build_W(k: int) -> Dfa:
    """Words that begin and end with the all-bars symbol 0."""
    if k < 1:
        raise ValueError("order must be at least 1")
    sigma = 1 << k
    # 0 start, 1 accept (last symbol 0), 2 inside (last symbol nonzero), 3 dead
    trans = np.empty((4, sigma), dtype=np.int64)
    trans[0] = 3
    trans[0, 0] = 1
    trans[1] = 2
    trans[1, 0] = 1
    trans[2] = 2
    trans[2, 0] = 1
    trans[3] = 3
    return Dfa(trans, np.array([False, True, False, False]), 0, k)


def build_all(k: int) -> Dfa:
    """One accepting state looping on every symbol."""
    return Dfa(np.zeros((1, 1 << k), dtype=np.int64), np.array([True]), 0, k)


def build_empty(k: int) -> Dfa:
    return Dfa(np.zeros((1, 1 << k), dtype=np.int64), np.array([False]), 0, k)


def build_R(k: int, i: int) -> Dfa:
    """Row ``i`` (1-based) never has three consecutive ``d`` letters."""
    if not 2 <= i <= k:
        raise ValueError(f"row {i} out of range 2..{k}")
    sigma = 1 << k
    bit = 1 << (k - i)
    gap = np.array([(s & bit) != 0 for s in range(sigma)])
    # state = number of trailing gaps on row i; 3 is dead
    trans = np.empty((4, sigma), dtype=np.int64)
    for q in range(3):
        trans[q] = np.where(gap, q + 1, 0)
    trans[3] = 3
    return Dfa(trans, np.array([True, True, True, False]), 0, k)


def build_factor_nfa(seg: Segment | SegmentPattern) -> Nfa:
    """Chain automaton accepting the words that contain ``seg`` as a factor."""
    pat = seg if isinstance(seg, SegmentPattern) else SegmentPattern.from_segment(seg)
    if pat.width == 0:
        raise ValueError("factor must be nonempty")
    sigma = 1 << pat.k
    m = pat.width
    delta: dict[tuple[int, int], set[int]] = {}
    for s in range(sigma):
        delta.setdefault((0, s), set()).add(0)
        delta.setdefault((m, s), set()).add(m)
    for j in range(m):
        for s in pat.column_symbols(j):
            delta.setdefault((j, s), set()).add(j + 1)
    return Nfa(
        sigma,
        m + 1,
        frozenset([0]),
        frozenset([m]),
        {key: frozenset(v) for key, v in delta.items()},
    )


# --- boolean algebra --------------------------------------------------------


def determinize(nfa: Nfa, budget: int | None = None) -> Dfa:
    """Subset construction; the empty subset becomes the sink."""
    start = nfa.initial
    index = {start: 0}
    order = [start]
    rows = []
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        row = []
        for s in range(nfa.alphabet_size):
            nxt = nfa.step(cur, s)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
                _check_budget(len(order), budget)
            row.append(index[nxt])
        rows.append(row)
    acc = np.array([bool(sub & nfa.accepting) for sub in order])
    return Dfa(np.array(rows, dtype=np.int64).reshape(len(order), nfa.alphabet_size), acc, 0, _order_of(nfa.alphabet_size))


def _order_of(sigma: int) -> int | None:
    k = sigma.bit_length() - 1
    return k if sigma == 1 << k else None


def complement(d: Dfa) -> Dfa:
    if not isinstance(d, Dfa):
        raise TypeError("complement needs a complete Dfa; complete a partial automaton first")
    return Dfa(d.trans, ~d.accepting, d.initial, d.k)


def intersect(a: Dfa, b: Dfa, budget: int | None = None) -> Dfa:
    """Product automaton over the reachable pairs, numbered in BFS order."""
    if a.alphabet_size != b.alphabet_size:
        raise ValueError(
            f"alphabet mismatch: {a.alphabet_size} vs {b.alphabet_size}"
        )
    nb = b.num_states
    ta, tb = a.trans, b.trans
    start = np.array([a.initial * nb + b.initial], dtype=np.int64)
    levels = [start]
    seen = start.copy()  # kept sorted
    frontier = start
    total = 1
    while frontier.size:
        fa, fb = np.divmod(frontier, nb)
        succ = (ta[fa] * nb + tb[fb]).ravel()
        # keep first-appearance order so numbering follows (state, symbol) order
        uniq, first = np.unique(succ, return_index=True)
        cand = succ[np.sort(first)]
        pos = np.searchsorted(seen, cand)
        pos = np.minimum(pos, seen.size - 1)
        fresh = cand[seen[pos] != cand]
        if fresh.size:
            total += fresh.size
            _check_budget(total, budget)
            levels.append(fresh)
            seen = np.union1d(seen, fresh)
        frontier = fresh
    codes = np.concatenate(levels)
    order = np.argsort(codes)
    sorted_codes = codes[order]
    ca, cb = np.divmod(codes, nb)
    succ = ta[ca] * nb + tb[cb]
    trans = order[np.searchsorted(sorted_codes, succ)]
    acc = a.accepting[ca] & b.accepting[cb]
    return Dfa(trans, acc, 0, a.k if a.k is not None else b.k)


def intersect_all(dfas: Sequence[Dfa], budget: int | None = None) -> Dfa:
    """Balanced pairwise reduction, minimizing after every product."""
    work = [minimize(d) for d in dfas]
    if not work:
        raise ValueError("nothing to intersect")
    while len(work) > 1:
        nxt = []
        for i in range(0, len(work) - 1, 2):
            nxt.append(minimize(intersect(work[i], work[i + 1], budget)))
        if len(work) % 2:
            nxt.append(work[-1])
        work = nxt
    return work[0]


# --- minimization and friends -----------------------------------------------


def _reachable(trans: np.ndarray, initial: int) -> np.ndarray:
    seen = np.zeros(trans.shape[0], dtype=bool)
    seen[initial] = True
    frontier = np.array([initial])
    while frontier.size:
        nxt = np.unique(trans[frontier].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return seen


def _coreachable(trans: np.ndarray, accepting: np.ndarray) -> np.ndarray:
    n, sigma = trans.shape
    src = np.repeat(np.arange(n), sigma)
    dst = trans.ravel()
    order = np.argsort(dst, kind="stable")
    src_by_dst = src[order]
    starts = np.searchsorted(dst[order], np.arange(n + 1))
    good = accepting.copy()
    frontier = np.flatnonzero(good)
    while frontier.size:
        preds = np.concatenate(
            [src_by_dst[starts[q] : starts[q + 1]] for q in frontier]
        ) if frontier.size < 64 else src_by_dst[
            np.concatenate([np.arange(starts[q], starts[q + 1]) for q in frontier])
        ]
        preds = np.unique(preds)
        preds = preds[~good[preds]]
        good[preds] = True
        frontier = preds
    return good


def canonical(d: Dfa) -> Dfa:
    """Renumber the reachable states in breadth-first order, symbols ascending."""
    n, sigma = d.trans.shape
    new = np.full(n, -1, dtype=np.int64)
    new[d.initial] = 0
    order = [d.initial]
    head = 0
    trans = d.trans
    # pure Python BFS is fine: canonical() is only called on minimized automata
    while head < len(order):
        q = order[head]
        head += 1
        for t in trans[q].tolist():
            if new[t] < 0:
                new[t] = len(order)
                order.append(t)
    order = np.array(order)
    return Dfa(new[trans[order]], d.accepting[order], 0, d.k)


def minimize(d: Dfa) -> Dfa:
    """Minimal complete DFA in canonical numbering (Moore-style refinement).

    Each round splits classes by the tuple (own class, class of every
    successor); the partition is stable once the class count stops growing.
    """
    keep = _reachable(d.trans, d.initial)
    if not keep.all():
        idx = np.flatnonzero(keep)
        remap = np.full(d.num_states, -1, dtype=np.int64)
        remap[idx] = np.arange(idx.size)
        d = Dfa(remap[d.trans[idx]], d.accepting[idx], int(remap[d.initial]), d.k)
    cls = d.accepting.astype(np.int64)
    count = len(np.unique(cls))
    while True:
        sig = np.column_stack([cls, cls[d.trans]])
        _, cls = np.unique(sig, axis=0, return_inverse=True)
        cls = cls.ravel()
        new_count = int(cls.max()) + 1
        if new_count == count:
            break
        count = new_count
    reps = np.zeros(count, dtype=np.int64)
    reps[cls] = np.arange(d.num_states)
    quotient = Dfa(cls[d.trans[reps]], d.accepting[reps], int(cls[d.initial]), d.k)
    return canonical(quotient)


def hopcroft_minimize(d: Dfa) -> Dfa:
    """Reference Hopcroft partition refinement, for cross-checking :func:`minimize`."""
    keep = np.flatnonzero(_reachable(d.trans, d.initial))
    states = set(keep.tolist())
    sigma = d.alphabet_size
    inverse: dict[tuple[int, int], set[int]] = {}
    for q in states:
        for s in range(sigma):
            inverse.setdefault((int(d.trans[q, s]), s), set()).add(q)
    acc = {q for q in states if d.accepting[q]}
    partition = [blk for blk in (acc, states - acc) if blk]
    worklist = [set(blk) for blk in partition]
    while worklist:
        splitter = worklist.pop()
        for s in range(sigma):
            pre = set()
            for q in splitter:
                pre |= inverse.get((q, s), set())
            refined = []
            for blk in partition:
                inside = blk & pre
                outside = blk - pre
                if inside and outside:
                    refined.extend([inside, outside])
                    if blk in worklist:
                        worklist.remove(blk)
                        worklist.extend([inside, outside])
                    else:
                        worklist.append(min(inside, outside, key=len))
                else:
                    refined.append(blk)
            partition = refined
    block_of = {}
    for i, blk in enumerate(partition):
        for q in blk:
            block_of[q] = i
    trans = np.zeros((len(partition), sigma), dtype=np.int64)
    accepting = np.zeros(len(partition), dtype=bool)
    for i, blk in enumerate(partition):
        q = next(iter(blk))
        trans[i] = [block_of[int(t)] for t in d.trans[q]]
        accepting[i] = bool(d.accepting[q])
    return canonical(Dfa(trans, accepting, block_of[d.initial], d.k))


def equivalent(a: Dfa, b: Dfa) -> bool:
    return minimize(a).same_structure(minimize(b))


def trim(d: Dfa | PartialDfa) -> PartialDfa:
    """Keep states that are reachable and can still reach acceptance."""
    if isinstance(d, PartialDfa):
        return _trim_partial(d)
    useful = _reachable(d.trans, d.initial) & _coreachable(d.trans, d.accepting)
    if not useful[d.initial]:
        return PartialDfa((), frozenset(), 0, None, d.alphabet_size, d.k)
    idx = np.flatnonzero(useful)
    remap = {int(q): i for i, q in enumerate(idx)}
    edges = []
    for q in idx:
        for s, t in enumerate(d.trans[q].tolist()):
            if t in remap:
                edges.append((remap[int(q)], s, remap[t]))
    acc = frozenset(remap[int(q)] for q in idx if d.accepting[q])
    return PartialDfa(tuple(edges), acc, len(idx), remap[d.initial], d.alphabet_size, d.k)


def _trim_partial(p: PartialDfa) -> PartialDfa:
    if p.initial is None:
        return p
    fwd: dict[int, list[int]] = {}
    back: dict[int, list[int]] = {}
    for a, _, b in p.edges:
        fwd.setdefault(a, []).append(b)
        back.setdefault(b, []).append(a)

    def closure(seeds, graph):
        seen = set(seeds)
        stack = list(seeds)
        while stack:
            for t in graph.get(stack.pop(), ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return seen

    useful = closure([p.initial], fwd) & closure(p.accepting, back)
    if p.initial not in useful:
        return PartialDfa((), frozenset(), 0, None, p.alphabet_size, p.k)
    order = sorted(useful)
    remap = {q: i for i, q in enumerate(order)}
    edges = tuple(
        (remap[a], s, remap[b]) for a, s, b in p.edges if a in useful and b in useful
    )
    acc = frozenset(remap[q] for q in p.accepting if q in useful)
    return PartialDfa(edges, acc, len(order), remap[p.initial], p.alphabet_size, p.k)


def count_words(d: Dfa | PartialDfa, length: int) -> int:
    """Exact number of accepted words of the given length."""
    if length < 0:
        raise ValueError("length must be non-negative")
    if isinstance(d, PartialDfa):
        if d.initial is None:
            return 0
        vec = {d.initial: 1}
        for _ in range(length):
            nxt: dict[int, int] = {}
            for a, _, b in d.edges:
                if a in vec:
                    nxt[b] = nxt.get(b, 0) + vec[a]
            vec = nxt
        return sum(c for q, c in vec.items() if q in d.accepting)
    vec = [0] * d.num_states
    vec[d.initial] = 1
    rows = d.trans.tolist()
    for _ in range(length):
        nxt = [0] * d.num_states
        for q, c in enumerate(vec):
            if c:
                for t in rows[q]:
                    nxt[t] += c
        vec = nxt
    return sum(c for q, c in enumerate(vec) if d.accepting[q])


# --- the sorting-plan automaton ---------------------------------------------


def avoid_patterns(
    patterns: Sequence[SegmentPattern], base: Dfa, budget: int | None = None
) -> Dfa:
    """Words of ``base`` containing no expansion of any pattern.

    This fuses the subset construction of the union of the chain automata,
    its complement and the product with ``base``.  A subset of chain
    positions is held as a bit vector and advanced shift-and style.
    """
    sigma = base.alphabet_size
    starts = 0
    finals = 0
    match = [0] * sigma
    offset = 0
    for pat in patterns:
        if 1 << pat.k != sigma:
            raise ValueError("pattern order does not match the alphabet")
        starts |= 1 << offset
        for j, (m, v) in enumerate(pat.columns):
            bit = 1 << (offset + j)
            for s in range(sigma):
                if s & m == v:
                    match[s] |= bit
        finals |= 1 << (offset + pat.width - 1)
        offset += pat.width
    base_rows = base.trans.tolist()
    # base dead states are merged with "pattern seen" into one sink
    base_dead = base.dead_states().tolist()
    sink = (-1, -1)
    start = (base.initial, 0)
    index = {sink: 0, start: 1}
    order = [sink, start]
    rows = [[0] * sigma]
    head = 1
    while head < len(order):
        q, bits = order[head]
        head += 1
        shifted = (bits << 1) | starts
        row = []
        for s in range(sigma):
            nq = base_rows[q][s]
            nb = shifted & match[s]
            if base_dead[nq] or nb & finals:
                row.append(0)
                continue
            key = (nq, nb)
            idx = index.get(key)
            if idx is None:
                idx = index[key] = len(order)
                order.append(key)
                _check_budget(len(order), budget)
            row.append(idx)
        rows.append(row)
    acc = np.array([False] + [bool(base.accepting[q]) for q, _ in order[1:]])
    return Dfa(np.array(rows, dtype=np.int64), acc, 1, base.k)


def base_dfa(k: int) -> Dfa:
    """Operation arrays whose rows ``2..k`` only have blocks of size at most 3."""
    return intersect_all([build_W(k)] + [build_R(k, i) for i in range(2, k + 1)])


def _group_part(args):
    group, base, budget = args
    return minimize(avoid_patterns(group, base, budget))


def build_sorting_plan_dfa(
    k: int,
    patterns: Sequence[SegmentPattern] | None = None,
    group_size: int = 2000,
    strategy: str = "fold",
    workers: int = 1,
    budget: int | None = None,
) -> Dfa:
    """Minimal DFA for the encodings of sorting plans of order ``k``.

    The forbidden patterns are split into groups of ``group_size``.  With
    ``strategy="fold"`` each group is compiled directly against the automaton
    built so far and minimized, so the running automaton only ever tracks
    pattern prefixes that can still occur.  With ``strategy="tree"`` every
    group is compiled against the block-size base language on its own
    (optionally in ``workers`` processes) and the minimized pieces are
    intersected pairwise in a balanced tree.  Both give the same canonical
    automaton.
    """
    if k < 1:
        raise ValueError("order must be at least 1")
    base = base_dfa(k)
    if k == 1:
        return base
    if patterns is None:
        patterns = forbidden_patterns(k, minimal=False)
    patterns = list(patterns)
    groups = [patterns[i : i + group_size] for i in range(0, len(patterns), group_size)]
    if strategy == "fold":
        cur = base
        for j, group in enumerate(groups):
            cur = minimize(avoid_patterns(group, cur, budget))
            log.info("group %d/%d folded: %d states", j + 1, len(groups), cur.num_states)
        return cur
    if strategy != "tree":
        raise ValueError(f"unknown strategy {strategy!r}")
    jobs = [(g, base, budget) for g in groups]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_group_part, jobs))
    else:
        parts = [_group_part(job) for job in jobs]
    return intersect_all([base] + parts, budget)


# --- text and DOT formats -----------------------------------------------------


def to_text(d: Dfa | PartialDfa, k: int | None = None) -> str:
    """Header, accepting line, then ``src sym dst`` sorted by ``(src, sym)``."""
    k = d.k if k is None else k
    if isinstance(d, Dfa):
        edges = [
            (q, s, int(t))
            for q in range(d.num_states)
            for s, t in enumerate(d.trans[q].tolist())
        ]
        acc = [int(q) for q in np.flatnonzero(d.accepting)]
        initial = d.initial
    else:
        edges = sorted(d.edges)
        acc = sorted(d.accepting)
        initial = -1 if d.initial is None else d.initial
    lines = [
        f"dfa k={k} alphabet={d.alphabet_size} states={d.num_states} initial={initial}",
        "accepting:" + "".join(f" {q}" for q in acc),
    ]
    lines.extend(f"{a} {s} {b}" for a, s, b in edges)
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Dfa | PartialDfa:
    """Inverse of :func:`to_text`; a complete table gives a :class:`Dfa`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    k = int(head["k"])
    sigma = int(head["alphabet"])
    n = int(head["states"])
    initial = int(head["initial"])
    if not lines[1].startswith("accepting:"):
        raise ValueError("second line must list the accepting states")
    acc = [int(t) for t in lines[1].split(":", 1)[1].split()]
    edges = [tuple(int(t) for t in ln.split()) for ln in lines[2:]]
    if len(edges) == n * sigma and initial >= 0:
        trans = np.full((n, sigma), -1, dtype=np.int64)
        for a, s, b in edges:
            trans[a, s] = b
        if (trans >= 0).all():
            accepting = np.zeros(n, dtype=bool)
            accepting[acc] = True
            return Dfa(trans, accepting, initial, k)
    return PartialDfa(
        tuple(edges), frozenset(acc), n, None if initial < 0 else initial, sigma, k
    )


def to_dot(d: Dfa | PartialDfa, name: str = "S") -> str:
    """Graphviz source; parallel edges are merged into one labelled arc."""
    if isinstance(d, Dfa):
        edges = [
            (q, s, int(t))
            for q in range(d.num_states)
            for s, t in enumerate(d.trans[q].tolist())
        ]
        acc = {int(q) for q in np.flatnonzero(d.accepting)}
        initial = d.initial
    else:
        edges, acc, initial = list(d.edges), set(d.accepting), d.initial
    labels: dict[tuple[int, int], list[int]] = {}
    for a, s, b in edges:
        labels.setdefault((a, b), []).append(s)
    out = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(d.num_states):
        shape = "doublecircle" if q in acc else "circle"
        out.append(f"  {q} [shape={shape}];")
    if initial is not None:
        out.append(f"  __start -> {initial};")
    for (a, b), syms in sorted(labels.items()):
        out.append(f'  {a} -> {b} [label="{_ranges(sorted(syms))}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def _ranges(syms: list[int]) -> str:
    parts = []
    start = prev = syms[0]
    for s in syms[1:] + [None]:
        if s is not None and s == prev + 1:
            prev = s
            continue
        parts.append(str(start) if start == prev else f"{start}-{prev}")
        if s is not None:
            start = prev = s
    return ",".join(parts)
