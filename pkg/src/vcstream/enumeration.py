"""Stateless dictionary-order cursors over subsets, bounded multisets, and permutations.

Next is a pure function of the cursor's parameters and current element, so a
branching algorithm that stores only the current element can resume an
enumeration after returning from recursion.  The end state is a distinguished
sentinel END, reached after exactly the closed-form number of productions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Hashable

from .errors import AdvancePastEnd, BadParams

AT_MOST = "at_most"
EXACTLY = "exactly"


class _End:
    __slots__ = ()

    def __repr__(self) -> str:
        return "END"


END = _End()


def _next_combination(pos: tuple[int, ...], n: int) -> tuple[int, ...] | None:
    """Successor of an ascending position tuple among same-size combinations."""
    out = list(pos)
    size = len(out)
    for j in reversed(range(size)):
        if out[j] < n - (size - j):
            out[j] += 1
            for t in range(j + 1, size):
                out[t] = out[t - 1] + 1
            return tuple(out)
    return None


@dataclass(frozen=True)
class SubsetCursor:
    universe: tuple
    k: int
    mode: str
    current: object  # tuple of elements, in universe order, or END

    @property
    def at_end(self) -> bool:
        return self.current is END

    def next(self) -> "SubsetCursor":
        return subset_next(self)


def subset_first(universe, k: int, mode: str = AT_MOST) -> SubsetCursor:
    universe = tuple(universe)
    if len(set(universe)) != len(universe):
        raise BadParams("universe elements must be distinct")
    if k < 0 or mode not in (AT_MOST, EXACTLY):
        raise BadParams("bad subset cursor parameters")
    if mode == AT_MOST:
        current: object = ()
    else:
        current = universe[:k] if k <= len(universe) else END
    return SubsetCursor(universe, k, mode, current)


def subset_next(c: SubsetCursor) -> SubsetCursor:
    if c.current is END:
        raise AdvancePastEnd("subset cursor already at END")
    index = {x: i for i, x in enumerate(c.universe)}
    pos = tuple(index[x] for x in c.current)
    n = len(c.universe)
    nxt = _next_combination(pos, n)
    if nxt is None:
        size = len(pos)
        if c.mode == AT_MOST and size < c.k and size < n:
            nxt = tuple(range(size + 1))
        else:
            return replace(c, current=END)
    return replace(c, current=tuple(c.universe[i] for i in nxt))


@dataclass(frozen=True)
class MultisetCursor:
    """Picks from keyed classes with per-class capacities and a total bound k.

    The current element is a tuple of (key, count) pairs ordered by class
    position, each count between 1 and the class capacity, total at most k.
    Productions are ordered by total size, then lexicographically on the
    (position, count) pair sequence.
    """

    classes: tuple[tuple[Hashable, int], ...]
    k: int
    current: object  # tuple of (key, count) pairs or END

    @property
    def at_end(self) -> bool:
        return self.current is END

    def next(self) -> "MultisetCursor":
        return multiset_next(self)


def _suffix_caps(caps: list[int]) -> list[int]:
    out = [0] * (len(caps) + 1)
    for i in reversed(range(len(caps))):
        out[i] = out[i + 1] + caps[i]
    return out


def _first_exact(caps: list[int], total: int, start: int) -> tuple[tuple[int, int], ...] | None:
    """Lex-smallest (position, count) sequence over positions >= start summing to total."""
    if total == 0:
        return ()
    suffix = _suffix_caps(caps)
    for p in range(start, len(caps)):
        if caps[p] == 0:
            continue
        for cnt in range(1, min(caps[p], total) + 1):
            if total - cnt <= suffix[p + 1]:
                tail = _first_exact(caps, total - cnt, p + 1)
                if tail is not None:
                    return ((p, cnt),) + tail
    return None


def _next_exact(caps: list[int], seq: tuple[tuple[int, int], ...], total: int):
    """Successor among exact-total sequences, or None when exhausted."""
    suffix = _suffix_caps(caps)
    for j in reversed(range(len(seq))):
        prefix = seq[:j]
        used = sum(c for _, c in prefix)
        budget = total - used
        p, c = seq[j]
        candidates = [(p, c2) for c2 in range(c + 1, caps[p] + 1)]
        for p2 in range(p + 1, len(caps)):
            candidates.extend((p2, c2) for c2 in range(1, caps[p2] + 1))
        for p2, c2 in candidates:
            if c2 <= budget and budget - c2 <= suffix[p2 + 1]:
                tail = _first_exact(caps, budget - c2, p2 + 1)
                if tail is not None:
                    return prefix + ((p2, c2),) + tail
    return None


def multiset_first(classes, k: int) -> MultisetCursor:
    classes = tuple((key, int(cap)) for key, cap in classes)
    keys = [key for key, _ in classes]
    if len(set(keys)) != len(keys):
        raise BadParams("class keys must be distinct")
    if k < 0 or any(cap < 0 for _, cap in classes):
        raise BadParams("bad multiset cursor parameters")
    return MultisetCursor(classes, k, ())


def multiset_next(c: MultisetCursor) -> MultisetCursor:
    if c.current is END:
        raise AdvancePastEnd("multiset cursor already at END")
    caps = [cap for _, cap in c.classes]
    index = {key: i for i, (key, _) in enumerate(c.classes)}
    seq = tuple((index[key], cnt) for key, cnt in c.current)
    total = sum(cnt for _, cnt in seq)
    nxt = _next_exact(caps, seq, total)
    if nxt is None:
        cap_sum = sum(caps)
        for t in range(total + 1, c.k + 1):
            if t > cap_sum:
                break
            first = _first_exact(caps, t, 0)
            if first is not None:
                nxt = first
                break
    if nxt is None:
        return replace(c, current=END)
    return replace(c, current=tuple((c.classes[p][0], cnt) for p, cnt in nxt))


@dataclass(frozen=True)
class PermutationCursor:
    items: tuple
    current: object  # tuple permutation of items, or END

    @property
    def at_end(self) -> bool:
        return self.current is END

    def next(self) -> "PermutationCursor":
        return permutation_next(self)


def permutation_first(items) -> PermutationCursor:
    items = tuple(items)
    if len(set(items)) != len(items):
        raise BadParams("items must be distinct")
    return PermutationCursor(items, items)


def permutation_next(c: PermutationCursor) -> PermutationCursor:
    if c.current is END:
        raise AdvancePastEnd("permutation cursor already at END")
    index = {x: i for i, x in enumerate(c.items)}
    seq = [index[x] for x in c.current]
    n = len(seq)
    j = n - 2
    while j >= 0 and seq[j] >= seq[j + 1]:
        j -= 1
    if j < 0:
        return replace(c, current=END)
    t = n - 1
    while seq[t] <= seq[j]:
        t -= 1
    seq[j], seq[t] = seq[t], seq[j]
    seq[j + 1:] = reversed(seq[j + 1:])
    return replace(c, current=tuple(c.items[i] for i in seq))


def cursor_values(cursor):
    """Yield every production of a cursor; convenience for tests and small loops."""
    while not cursor.at_end:
        yield cursor.current
        cursor = cursor.next()
